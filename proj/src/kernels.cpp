#include "gpfast/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "gpfast/errors.hpp"

namespace gpfast {

void SeKernelParams::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("SE kernel sigma must be > 0");
  if (!(phi > 0.0)) throw std::invalid_argument("SE kernel phi must be > 0");
  if (!(jitter >= 0.0)) throw std::invalid_argument("SE kernel jitter must be >= 0");
}

double SeKernelParams::operator()(double dist) const noexcept {
  return sigma * sigma * std::exp(-(dist * dist) / (2.0 * phi * phi));
}

SeKernelParams SeKernelParams::with_default_jitter(double sigma, double phi) {
  return {sigma, phi, Tolerances::default_jitter * sigma * sigma};
}

TimeGrid::TimeGrid(Vector points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("time grid must be non-empty");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i] > points_[i - 1]))
      throw std::invalid_argument("time grid must be strictly ascending");
  if (points_.size() > 2) {
    const double gap0 = points_[1] - points_[0];
    for (std::size_t i = 2; i < points_.size() && evenly_spaced_; ++i) {
      const double gap = points_[i] - points_[i - 1];
      evenly_spaced_ = std::abs(gap - gap0) <= Tolerances::even_spacing * std::abs(gap0);
    }
  }
}

TimeGrid TimeGrid::regular(std::size_t n, double start, double step) {
  Vector pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = start + static_cast<double>(i) * step;
  return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::linspace(std::size_t n, double start, double stop) {
  if (n == 1) return TimeGrid(Vector{start});
  return regular(n, start, (stop - start) / static_cast<double>(n - 1));
}

double TimeGrid::spacing() const noexcept {
  if (points_.size() < 2) return 0.0;
  return (points_.back() - points_.front()) / static_cast<double>(points_.size() - 1);
}

SymPdMatrix se_covariance(const TimeGrid& grid, const SeKernelParams& p) {
  p.validate();
  const std::size_t n = grid.n();
  Matrix k(n, n);
  if (grid.evenly_spaced()) {
    const SymToeplitz t = se_covariance_toeplitz(grid, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) k(i, j) = t(i, j);
    return SymPdMatrix(std::move(k));
  }
  for (std::size_t i = 0; i < n; ++i) {
    k(i, i) = p(0.0) + p.jitter;
    for (std::size_t j = 0; j < i; ++j) {
      const double v = p(grid[i] - grid[j]);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return SymPdMatrix(std::move(k));
}

SymToeplitz se_covariance_toeplitz(const TimeGrid& grid, const SeKernelParams& p) {
  p.validate();
  if (!grid.evenly_spaced()) throw NotEvenlySpaced();
  const double step = grid.spacing();
  Vector row(grid.n());
  for (std::size_t k = 0; k < row.size(); ++k) row[k] = p(static_cast<double>(k) * step);
  row[0] += p.jitter;
  return SymToeplitz(std::move(row));
}

}  // namespace gpfast
