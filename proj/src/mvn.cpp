#include "gpfast/mvn.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "gpfast/baseline.hpp"
#include "gpfast/errors.hpp"
#include "gpfast/linalg.hpp"

namespace gpfast {
namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

double log_density(std::size_t n, double log_det, double quad) noexcept {
  return -0.5 * (static_cast<double>(n) * kLog2Pi) - 0.5 * log_det - 0.5 * quad;
}

void check_dim(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

const MvnParams& validated(const MvnParams& p) {
  p.validate();
  return p;
}

struct Fnv1a {
  std::uint64_t h = 14695981039346656037ull;
  void add(std::uint64_t word) noexcept {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  void add(std::span<const double> values) noexcept {
    for (double v : values) add(std::bit_cast<std::uint64_t>(v));
  }
};

}  // namespace

std::size_t dimension(const Covariance& cov) noexcept {
  return std::visit([](const auto& c) { return c.n(); }, cov);
}

SymPdMatrix dense(const Covariance& cov) {
  if (const auto* t = std::get_if<SymToeplitz>(&cov)) return materialize(*t);
  return std::get<SymPdMatrix>(cov);
}

void MvnParams::validate() const { check_dim(dimension(cov), mu.size()); }

MvnParams MvnParams::centered(Covariance cov) {
  const std::size_t n = dimension(cov);
  return MvnParams{Vector(n, 0.0), std::move(cov)};
}

std::uint64_t covariance_key(const Covariance& cov) noexcept {
  Fnv1a fnv;
  fnv.add(static_cast<std::uint64_t>(cov.index()));
  fnv.add(static_cast<std::uint64_t>(dimension(cov)));
  if (const auto* t = std::get_if<SymToeplitz>(&cov))
    fnv.add(t->first_row());
  else
    fnv.add(std::get<SymPdMatrix>(cov).dense().data());
  return fnv.h;
}

LogDensityCache::LogDensityCache(const Covariance& cov)
    : dim_(dimension(cov)), key_(covariance_key(cov)) {
  if (const auto* t = std::get_if<SymToeplitz>(&cov)) {
    factor_ = trench_invert(*t);
    log_det_ = toeplitz_log_det(*t);
  } else {
    CholFactor chol = cholesky(std::get<SymPdMatrix>(cov));
    log_det_ = gpfast::log_det(chol);
    factor_ = std::move(chol);
  }
}

bool LogDensityCache::built_from(const Covariance& cov) const noexcept {
  return dimension(cov) == dim_ && covariance_key(cov) == key_;
}

double LogDensityCache::quadratic_form(std::span<const double> x,
                                       std::span<const double> mu) const {
  Vector d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = x[i] - mu[i];

  if (const auto* chol = std::get_if<CholFactor>(&factor_)) {
    chol->solve_lower_in_place(d);
    double q = 0.0;
    for (double v : d) q += v * v;
    return q;
  }
  const Matrix& inv = std::get<SymPdMatrix>(factor_).dense();
  double q = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    auto row = inv.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += row[j] * d[j];
    q += d[i] * s;
  }
  return q;
}

MvnSampler::MvnSampler(const MvnParams& params)
    : mu_(params.mu), chol_(cholesky(dense(validated(params).cov))) {}

void MvnSampler::transform(std::span<const double> z, std::span<double> out) const {
  chol_.multiply(z, out);
}

void MvnSampler::draw(RngState& rng, std::span<double> out) const {
  const std::size_t n = dim();
  Vector z(n);
  rng.fill_normal(z);
  chol_.multiply(z, out);
  for (std::size_t i = 0; i < n; ++i) out[i] = mu_[i] + out[i];
}

Matrix rmvnorm(const MvnParams& params, std::size_t count, RngState& rng) {
  const MvnSampler sampler(params);
  Matrix out(count, sampler.dim());
  for (std::size_t r = 0; r < count; ++r) sampler.draw(rng, out.row(r));
  return out;
}

double log_dmvnorm_cached(std::span<const double> x, const LogDensityCache& cache,
                          std::span<const double> mu) {
  check_dim(cache.dim(), x.size());
  check_dim(cache.dim(), mu.size());
  return log_density(cache.dim(), cache.log_det(), cache.quadratic_form(x, mu));
}

double log_dmvnorm(std::span<const double> x, const MvnParams& params) {
  params.validate();
  check_dim(params.dim(), x.size());
  const LogDensityCache cache(params.cov);
  return log_dmvnorm_cached(x, cache, params.mu);
}

double baseline_log_dmvnorm(std::span<const double> x, const MvnParams& params) {
  params.validate();
  const std::size_t n = params.dim();
  check_dim(n, x.size());
  const SymPdMatrix sigma = dense(params.cov);
  const SymPdMatrix inv = baseline_invert(sigma);
  const double ld = baseline_log_det(sigma);

  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - params.mu[i];
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q += d[i] * inv(i, j) * d[j];
  return log_density(n, ld, q);
}

}  // namespace gpfast
