#include "gpfast/linalg.hpp"

#include <atomic>
#include <cmath>

#include "gpfast/errors.hpp"

namespace gpfast {
namespace {

std::atomic<std::uint64_t> g_cholesky_calls{0};

double dot_prefix(std::span<const double> a, std::span<const double> b, std::size_t len) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < len; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

CholFactor cholesky(const SymPdMatrix& m) {
  g_cholesky_calls.fetch_add(1, std::memory_order_relaxed);
  const std::size_t n = m.n();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto li = l.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      auto lj = l.row(j);
      li[j] = (m(i, j) - dot_prefix(li, lj, j)) / lj[j];
    }
    const double pivot = m(i, i) - dot_prefix(li, li, i);
    // Negated comparison also rejects NaN pivots.
    if (!(pivot > 0.0)) throw NotPositiveDefinite(i, "covariance");
    li[i] = std::sqrt(pivot);
  }
  return CholFactor(std::move(l));
}

SymPdMatrix invert(const CholFactor& chol) {
  const std::size_t n = chol.n();
  const Matrix& l = chol.lower();

  // Rows of W = L^{-1}: W_i = (e_i - sum_{k<i} L_ik W_k) / L_ii.
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto wi = w.row(i);
    wi[i] = 1.0;
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = l(i, k);
      auto wk = w.row(k);
      for (std::size_t j = 0; j <= k; ++j) wi[j] -= lik * wk[j];
    }
    const double inv_diag = 1.0 / l(i, i);
    for (std::size_t j = 0; j <= i; ++j) wi[j] *= inv_diag;
  }

  // inv = W^T W, accumulated one row of W at a time into the lower triangle.
  Matrix inv(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    auto wk = w.row(k);
    for (std::size_t i = 0; i <= k; ++i) {
      const double wki = wk[i];
      auto row = inv.row(i);
      for (std::size_t j = 0; j <= i; ++j) row[j] += wki * wk[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) inv(i, j) = inv(j, i);
  return SymPdMatrix(std::move(inv));
}

SymPdMatrix invert(const SymPdMatrix& m) { return invert(cholesky(m)); }

double log_det(const CholFactor& chol) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < chol.n(); ++i) s += std::log(chol(i, i));
  return 2.0 * s;
}

double log_det(const SymPdMatrix& m) { return log_det(cholesky(m)); }

std::uint64_t cholesky_call_count() noexcept {
  return g_cholesky_calls.load(std::memory_order_relaxed);
}

}  // namespace gpfast
