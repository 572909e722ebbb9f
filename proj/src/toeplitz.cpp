#include "gpfast/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpfast/config.hpp"
#include "gpfast/errors.hpp"

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

namespace gpfast {
namespace {

// The reflection coefficients of a fast-decaying row shrink towards the
// underflow threshold, and subnormal arithmetic is roughly 10x slower on x86.
// Flushing them to zero only moves results below 2.2e-308.
class FlushSubnormals {
 public:
#if defined(__SSE2__)
  FlushSubnormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040); }  // FTZ | DAZ
  ~FlushSubnormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

// Durbin on the normalized row, with unscaled betas (beta_0 = 1).
DurbinSolution durbin_normalized(const SymToeplitz& t) {
  const FlushSubnormals ftz;
  const std::size_t n = t.n();
  const Vector& r = t.first_row();
  const double r0 = r[0];

  DurbinSolution out;
  out.betas.assign(n, 0.0);
  out.betas[0] = 1.0;
  if (n == 1) return out;

  Vector rho(n);
  for (std::size_t k = 1; k < n; ++k) rho[k] = r[k] / r0;

  const std::size_t m = n - 1;
  Vector& y = out.y;
  y.assign(m, 0.0);

  double alpha = -rho[1];
  double beta = 1.0;
  if (!(std::abs(alpha) < 1.0)) throw NotPositiveDefinite(1, "toeplitz matrix");
  y[0] = alpha;
  for (std::size_t k = 1; k < m; ++k) {
    beta *= (1.0 - alpha) * (1.0 + alpha);
    out.betas[k] = beta;

    double acc = rho[k + 1];
    for (std::size_t i = 0; i < k; ++i) acc += rho[k - i] * y[i];
    alpha = -acc / beta;
    if (!(std::abs(alpha) < 1.0)) throw NotPositiveDefinite(k + 1, "toeplitz matrix");

    // y <- [y + alpha * reverse(y); alpha], updating mirrored pairs together.
    for (std::size_t i = 0, j = k - 1; i < j; ++i, --j) {
      const double yi = y[i];
      const double yj = y[j];
      y[i] = yi + alpha * yj;
      y[j] = yj + alpha * yi;
    }
    if (k % 2 == 1) y[k / 2] *= 1.0 + alpha;
    y[k] = alpha;
  }
  beta *= (1.0 - alpha) * (1.0 + alpha);
  out.betas[m] = beta;

  std::size_t worst = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (!(out.betas[k] > 0.0)) throw NotPositiveDefinite(k, "toeplitz matrix");
    if (out.betas[k] < out.betas[worst]) worst = k;
  }
  if (out.betas[worst] < Tolerances::toeplitz_near_singular)
    out.warning = ConditioningWarning{worst, out.betas[worst]};
  return out;
}

void report(std::optional<ConditioningWarning>* sink, const DurbinSolution& d) {
  if (sink) *sink = d.warning;
}

}  // namespace

SymToeplitz::SymToeplitz(Vector first_row) : row_(std::move(first_row)) {
  if (row_.empty()) throw std::invalid_argument("Toeplitz first row must be non-empty");
  if (!(row_[0] > 0.0)) throw NotPositiveDefinite(0, "toeplitz matrix");
}

DurbinSolution durbin(const SymToeplitz& t) {
  DurbinSolution d = durbin_normalized(t);
  const double r0 = t.first_row()[0];
  for (double& b : d.betas) b *= r0;
  return d;
}

SymPdMatrix trench_invert(const SymToeplitz& t, std::optional<ConditioningWarning>* warning) {
  const std::size_t n = t.n();
  const double r0 = t.first_row()[0];
  const DurbinSolution d = durbin_normalized(t);
  report(warning, d);
  const FlushSubnormals ftz;

  Matrix b(n, n);
  if (n == 1) {
    b(0, 0) = 1.0 / r0;
    return SymPdMatrix(std::move(b));
  }

  const Vector& y = d.y;
  const Vector& r = t.first_row();
  double dot = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) dot += (r[i + 1] / r0) * y[i];
  const double gamma = 1.0 / (1.0 + dot);

  // nu_p = gamma * y_{n-2-p}
  Vector nu(n - 1);
  for (std::size_t p = 0; p + 1 < n; ++p) nu[p] = gamma * y[n - 2 - p];

  // Rows 0..half are built in blocks. Each block computes its wedge part
  // (columns i..n-1-i, each row from the previous one shifted along the
  // diagonal), copies the rest of its rows from rows above (symmetry on the
  // left, persymmetry on the right) and mirrors itself into the bottom half,
  // which is the top half reversed (symmetric plus persymmetric means
  // centrosymmetric). Working block by block keeps the rows cache-resident.
  const double scale = 1.0 / r0;
  const double step = scale / gamma;
  const std::size_t half = (n - 1) / 2;
  b(0, 0) = gamma * scale;
  for (std::size_t j = 1; j < n; ++j) b(0, j) = nu[n - 1 - j] * scale;

  constexpr std::size_t kBlock = 8;
  for (std::size_t ib = 0; ib <= half; ib += kBlock) {
    const std::size_t ie = std::min(ib + kBlock, half + 1);
    for (std::size_t i = std::max<std::size_t>(ib, 1); i < ie; ++i) {
      const auto prev = b.row(i - 1);
      auto cur = b.row(i);
      const double nu_tail_i = nu[n - 1 - i];
      const double nu_head_i = nu[i - 1];
      for (std::size_t j = i; j + i <= n - 1; ++j)
        cur[j] = prev[j - 1] + (nu[n - 1 - j] * nu_tail_i - nu_head_i * nu[j - 1]) * step;
    }
    for (std::size_t kb = 0; kb < ie; kb += kBlock) {
      const std::size_t ke = std::min(kb + kBlock, ie);
      for (std::size_t k = kb; k < ke; ++k) {
        const auto src = b.row(k);
        for (std::size_t i = std::max(ib, k + 1); i < ie; ++i) {
          auto dst = b.row(i);
          dst[k] = src[i];
          dst[n - 1 - k] = src[n - 1 - i];
        }
      }
    }
    for (std::size_t i = ib; i < ie && n - 1 - i > half; ++i) {
      const auto src = b.row(i);
      std::reverse_copy(src.begin(), src.end(), b.row(n - 1 - i).begin());
    }
  }
  return SymPdMatrix(std::move(b));
}

double toeplitz_log_det(const SymToeplitz& t, std::optional<ConditioningWarning>* warning) {
  const DurbinSolution d = durbin(t);
  report(warning, d);
  double s = 0.0;
  for (double beta : d.betas) s += std::log(beta);
  return s;
}

SymPdMatrix materialize(const SymToeplitz& t) {
  const std::size_t n = t.n();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = t(i, j);
  }
  return SymPdMatrix(std::move(m));
}

}  // namespace gpfast
