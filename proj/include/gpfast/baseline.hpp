#pragma once

#include "gpfast/matrix.hpp"

namespace gpfast {

// Deliberately naive dense routines used as benchmark baselines. They ignore
// symmetry and definiteness and share no code with the fast paths.

/// Gauss-Jordan elimination with partial pivoting on [A | I].
/// Throws SingularMatrix when a pivot magnitude falls below 1e-12.
SymPdMatrix baseline_invert(const SymPdMatrix& m);

/// log det(A) through LU with partial pivoting. Throws SingularMatrix on a
/// tiny pivot and NotPositiveDefinite when the determinant is negative.
double baseline_log_det(const SymPdMatrix& m);

}  // namespace gpfast
