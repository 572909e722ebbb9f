#include "gpfast/baseline.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>

#include "gpfast/config.hpp"
#include "gpfast/errors.hpp"
#include "gpfast/mvn.hpp"

namespace gpfast {

SymPdMatrix baseline_invert(const SymPdMatrix& m) {
  const std::size_t n = m.n();
  const std::size_t w = 2 * n;
  Matrix aug(n, w);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1.0;
  }

  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(aug(r, c)) > std::abs(aug(p, c))) p = r;
    if (!(std::abs(aug(p, c)) >= Tolerances::singular_pivot)) throw SingularMatrix(c);
    if (p != c)
      for (std::size_t j = 0; j < w; ++j) std::swap(aug(p, j), aug(c, j));

    const double inv_pivot = 1.0 / aug(c, c);
    for (std::size_t j = 0; j < w; ++j) aug(c, j) *= inv_pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = aug(r, c);
      for (std::size_t j = 0; j < w; ++j) aug(r, j) -= f * aug(c, j);
    }
  }

  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = 0.5 * (aug(i, n + j) + aug(j, n + i));
  return SymPdMatrix(std::move(inv));
}

double baseline_log_det(const SymPdMatrix& m) {
  const std::size_t n = m.n();
  Matrix a = m.dense();
  double log_abs = 0.0;
  bool negative = false;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (!(std::abs(a(p, c)) >= Tolerances::singular_pivot)) throw SingularMatrix(c);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      negative = !negative;
    }
    const double pivot = a(c, c);
    if (pivot < 0.0) negative = !negative;
    log_abs += std::log(std::abs(pivot));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / pivot;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  if (negative) throw NotPositiveDefinite(n - 1, "covariance (negative determinant)");
  return log_abs;
}

Matrix baseline_sample_eigen(const MvnParams& params, std::size_t count, RngState& rng) {
  params.validate();
  const auto* cov = std::get_if<SymPdMatrix>(&params.cov);
  if (!cov) throw std::invalid_argument("baseline_sample_eigen requires a dense covariance");
  const std::size_t n = cov->n();
  Matrix out(count, n);
  if (count == 0) return out;

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> sigma(cov->dense().data().data(), n, n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  if (eig.info() != Eigen::Success) throw NotPositiveDefinite(0, "covariance (eigensolver failed)");

  Eigen::VectorXd root(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues()[static_cast<Eigen::Index>(k)];
    if (lambda < -Tolerances::eigen_clamp) throw NotPositiveDefinite(k, "covariance (eigenvalue)");
    root[static_cast<Eigen::Index>(k)] = std::sqrt(std::max(lambda, 0.0));
  }
  const Eigen::MatrixXd transform = eig.eigenvectors() * root.asDiagonal();

  Eigen::VectorXd z(n);
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t k = 0; k < n; ++k) z[static_cast<Eigen::Index>(k)] = rng.normal();
    const Eigen::VectorXd x = transform * z;
    auto row = out.row(r);
    for (std::size_t k = 0; k < n; ++k) row[k] = params.mu[k] + x[static_cast<Eigen::Index>(k)];
  }
  return out;
}

}  // namespace gpfast
