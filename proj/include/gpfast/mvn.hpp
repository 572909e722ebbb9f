#pragma once

#include <cstdint>
#include <span>
#include <variant>

#include "gpfast/matrix.hpp"
#include "gpfast/rng.hpp"
#include "gpfast/toeplitz.hpp"

namespace gpfast {

using Covariance = std::variant<SymPdMatrix, SymToeplitz>;

std::size_t dimension(const Covariance& cov) noexcept;
/// Dense copy of the covariance (materialized when Toeplitz).
SymPdMatrix dense(const Covariance& cov);

/// Mean vector plus dense or Toeplitz covariance.
struct MvnParams {
  Vector mu;
  Covariance cov;

  std::size_t dim() const noexcept { return mu.size(); }
  bool is_toeplitz() const noexcept { return std::holds_alternative<SymToeplitz>(cov); }
  /// Throws DimensionMismatch if mu and cov disagree.
  void validate() const;

  /// Zero-mean params for `cov`.
  static MvnParams centered(Covariance cov);
};

/// Factorization of a covariance reusable across log-density evaluations.
///
/// Dense covariances keep their Cholesky factor; Toeplitz covariances keep
/// the Trench inverse. Immutable after construction.
class LogDensityCache {
 public:
  explicit LogDensityCache(const Covariance& cov);

  std::size_t dim() const noexcept { return dim_; }
  double log_det() const noexcept { return log_det_; }
  /// FNV-1a hash of the covariance representation it was built from.
  std::uint64_t key() const noexcept { return key_; }
  bool built_from(const Covariance& cov) const noexcept;

  /// (x - mu)^T Sigma^{-1} (x - mu); no dimension checks.
  double quadratic_form(std::span<const double> x, std::span<const double> mu) const;

 private:
  std::size_t dim_ = 0;
  double log_det_ = 0.0;
  std::uint64_t key_ = 0;
  std::variant<CholFactor, SymPdMatrix> factor_;
};

std::uint64_t covariance_key(const Covariance& cov) noexcept;

/// Draws from N(mu, Sigma) through a Cholesky factor computed once.
/// Const after construction, so one sampler may serve several threads.
class MvnSampler {
 public:
  explicit MvnSampler(const MvnParams& params);

  std::size_t dim() const noexcept { return mu_.size(); }
  const CholFactor& factor() const noexcept { return chol_; }

  /// out = mu + L z, z drawn from rng as dim() consecutive standard normals.
  void draw(RngState& rng, std::span<double> out) const;
  /// out = L z for a caller-supplied z.
  void transform(std::span<const double> z, std::span<double> out) const;

 private:
  Vector mu_;
  CholFactor chol_;
};

/// count x n matrix of draws (rows are draws). Toeplitz covariances are
/// materialized and factored densely; the factor is computed once per call.
Matrix rmvnorm(const MvnParams& params, std::size_t count, RngState& rng);

/// log N(x | mu, Sigma). Dense covariance: triangular solve against the
/// Cholesky factor. Toeplitz covariance: Trench inverse and Durbin log-det.
double log_dmvnorm(std::span<const double> x, const MvnParams& params);

/// Same value as log_dmvnorm, bit for bit, with the factorization reused.
double log_dmvnorm_cached(std::span<const double> x, const LogDensityCache& cache,
                          std::span<const double> mu);

/// Slow reference: Gauss-Jordan inverse and LU determinant on every call.
double baseline_log_dmvnorm(std::span<const double> x, const MvnParams& params);

/// Reference sampler: symmetric eigendecomposition of the (dense) covariance
/// on every call, then mu + V sqrt(Lambda) z. Eigenvalues in [-1e-10, 0] are
/// clamped to zero; anything lower throws NotPositiveDefinite.
Matrix baseline_sample_eigen(const MvnParams& params, std::size_t count, RngState& rng);

}  // namespace gpfast
