#pragma once

#include <cstddef>

namespace gpfast {

/// Numerical thresholds shared by the library, its tests and the docs.
///
/// Tolerances tied to a named norm are relative to that norm; the rest are
/// absolute.
struct Tolerances {
  /// ||L L^T - A||_max <= cholesky_roundtrip * ||A||_max
  static constexpr double cholesky_roundtrip = 1e-10;
  /// ||inv(A) A - I||_max for well-conditioned inputs (cond <= 1e6).
  static constexpr double inverse_identity = 1e-8;
  /// Pivot magnitude below which the Gauss-Jordan baseline gives up.
  static constexpr double singular_pivot = 1e-12;
  /// Eigenvalues in [-eigen_clamp, 0] are clamped to zero by the baseline sampler.
  static constexpr double eigen_clamp = 1e-10;
  /// Toeplitz prediction-error variance below this * r0 raises a conditioning warning.
  static constexpr double toeplitz_near_singular = 1e-14;
  /// Relative gap agreement for a grid to count as evenly spaced.
  static constexpr double even_spacing = 1e-12;
  /// Default diagonal jitter, as a multiple of sigma^2.
  static constexpr double default_jitter = 1e-8;
};

/// Hard cap on elliptical-slice bracket shrinks within a single transition.
inline constexpr std::size_t kMaxEssShrinks = 10000;

}  // namespace gpfast
