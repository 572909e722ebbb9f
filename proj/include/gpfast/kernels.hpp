#pragma once

#include "gpfast/config.hpp"
#include "gpfast/matrix.hpp"
#include "gpfast/toeplitz.hpp"

namespace gpfast {

/// Squared-exponential kernel k(t, t') = sigma^2 exp(-(t - t')^2 / (2 phi^2)),
/// plus `jitter` on the diagonal.
struct SeKernelParams {
  double sigma = 1.0;
  double phi = 1.0;
  double jitter = 0.0;

  /// Throws std::invalid_argument unless sigma > 0, phi > 0, jitter >= 0.
  void validate() const;
  /// Kernel value at distance `dist`, without jitter.
  double operator()(double dist) const noexcept;
  /// Params with jitter = Tolerances::default_jitter * sigma^2.
  static SeKernelParams with_default_jitter(double sigma, double phi);
};

/// Strictly ascending time points.
class TimeGrid {
 public:
  /// Throws std::invalid_argument if empty or not strictly ascending.
  explicit TimeGrid(Vector points);
  /// n points t_i = start + i * step.
  static TimeGrid regular(std::size_t n, double start, double step);
  /// n points evenly spaced over [start, stop].
  static TimeGrid linspace(std::size_t n, double start, double stop);

  std::size_t n() const noexcept { return points_.size(); }
  const Vector& points() const noexcept { return points_; }
  double operator[](std::size_t i) const noexcept { return points_[i]; }
  /// True iff all consecutive gaps agree within 1e-12 relative.
  bool evenly_spaced() const noexcept { return evenly_spaced_; }
  /// Mean gap (t_{n-1} - t_0) / (n - 1); zero for a single point.
  double spacing() const noexcept;

 private:
  Vector points_;
  bool evenly_spaced_ = true;
};

/// Dense SE covariance. On evenly spaced grids distances are taken as
/// |i - j| * spacing, so the result equals materialize(se_covariance_toeplitz)
/// bit for bit.
SymPdMatrix se_covariance(const TimeGrid& grid, const SeKernelParams& p);

/// Toeplitz SE covariance. Throws NotEvenlySpaced on irregular grids.
SymToeplitz se_covariance_toeplitz(const TimeGrid& grid, const SeKernelParams& p);

}  // namespace gpfast
