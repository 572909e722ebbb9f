#pragma once

#include <cstdint>

#include "gpfast/matrix.hpp"

namespace gpfast {

/// Cholesky factorization L L^T = m. Reads only the lower triangle of m.
/// Throws NotPositiveDefinite carrying the failing leading-minor index.
CholFactor cholesky(const SymPdMatrix& m);

/// Inverse through the Cholesky factor; the result is exactly symmetric.
SymPdMatrix invert(const SymPdMatrix& m);
SymPdMatrix invert(const CholFactor& chol);

/// log|m| = 2 sum_i log L_ii.
double log_det(const SymPdMatrix& m);
double log_det(const CholFactor& chol) noexcept;

/// Number of `cholesky` calls made by this process. Used by tests to check
/// that factorizations are amortized.
std::uint64_t cholesky_call_count() noexcept;

}  // namespace gpfast
