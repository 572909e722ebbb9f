#pragma once

#include <optional>

#include "gpfast/matrix.hpp"

namespace gpfast {

/// Symmetric Toeplitz matrix stored as its first row r_0..r_{n-1};
/// entry (i, j) is r_{|i-j|}.
class SymToeplitz {
 public:
  SymToeplitz() = default;
  /// Throws std::invalid_argument for an empty row and NotPositiveDefinite(0)
  /// when r_0 <= 0.
  explicit SymToeplitz(Vector first_row);

  std::size_t n() const noexcept { return row_.size(); }
  const Vector& first_row() const noexcept { return row_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return row_[i > j ? i - j : j - i];
  }

  friend bool operator==(const SymToeplitz&, const SymToeplitz&) = default;

 private:
  Vector row_;
};

/// Raised alongside a result (not thrown) when a prediction-error variance is
/// positive but tiny relative to r_0.
struct ConditioningWarning {
  std::size_t index = 0;       ///< recursion step with the smallest variance
  double relative_beta = 0.0;  ///< beta_index / r_0
};

/// Output of the Durbin recursion on the normalized matrix rho_k = r_k / r_0.
struct DurbinSolution {
  /// Solves T_{n-1}(rho) y = -(rho_1, ..., rho_{n-1}).
  Vector y;
  /// Prediction-error variances beta_0..beta_{n-1}, scaled so beta_0 = r_0.
  /// Their product is det(T).
  Vector betas;
  std::optional<ConditioningWarning> warning;
};

/// O(n^2) Yule-Walker solve. Throws NotPositiveDefinite(k) if the k-th
/// reflection coefficient has magnitude >= 1.
DurbinSolution durbin(const SymToeplitz& t);

/// Full inverse in O(n^2) via Trench's recursion. Only the wedge
/// i <= j <= n-1-i is computed; the rest is copied by symmetry and
/// persymmetry, so both hold exactly. `warning`, when given, receives the
/// conditioning warning from the underlying recursion (or nullopt).
SymPdMatrix trench_invert(const SymToeplitz& t,
                          std::optional<ConditioningWarning>* warning = nullptr);

/// log|T| = sum_k log beta_k.
double toeplitz_log_det(const SymToeplitz& t,
                        std::optional<ConditioningWarning>* warning = nullptr);

SymPdMatrix materialize(const SymToeplitz& t);

}  // namespace gpfast
