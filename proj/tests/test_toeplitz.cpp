#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gpfast/baseline.hpp"
#include "gpfast/errors.hpp"
#include "gpfast/linalg.hpp"
#include "gpfast/toeplitz.hpp"
#include "oracles.hpp"

namespace gpfast {
namespace {

// Random PD Toeplitz rows: autocovariances of an AR(1)-plus-white-noise
// process, which are PD for |a| < 1 and noise > 0.
SymToeplitz random_toeplitz(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> coef(-0.95, 0.95);
  std::uniform_real_distribution<double> noise(0.05, 2.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  const double a = coef(gen);
  const double s = scale(gen);
  Vector r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = s * std::pow(a, static_cast<double>(k)) / (1 - a * a);
  r[0] += noise(gen);
  return SymToeplitz(std::move(r));
}

TEST(SymToeplitz, RejectsBadRows) {
  EXPECT_THROW(SymToeplitz(Vector{}), std::invalid_argument);
  EXPECT_THROW(SymToeplitz(Vector{0.0, 0.1}), NotPositiveDefinite);
}

TEST(Materialize, Definition) {
  EXPECT_EQ(materialize(SymToeplitz({1.0, 0.5})).dense(), (Matrix{{1, 0.5}, {0.5, 1}}));
  EXPECT_EQ(materialize(SymToeplitz({3.0})).dense(), (Matrix{{3}}));
  const double a = 0.3, b = -0.2;
  EXPECT_EQ(materialize(SymToeplitz({1.0, a, b})).dense(),
            (Matrix{{1, a, b}, {a, 1, a}, {b, a, 1}}));
}

TEST(Durbin, OneByOne) {
  const DurbinSolution d = durbin(SymToeplitz({1.0}));
  EXPECT_TRUE(d.y.empty());
  ASSERT_EQ(d.betas.size(), 1u);
  EXPECT_EQ(d.betas[0], 1.0);
}

TEST(Durbin, TwoByTwoByHand) {
  const double r = 0.6;
  const DurbinSolution d = durbin(SymToeplitz({1.0, r}));
  ASSERT_EQ(d.y.size(), 1u);
  EXPECT_DOUBLE_EQ(d.y[0], -r);
  ASSERT_EQ(d.betas.size(), 2u);
  EXPECT_DOUBLE_EQ(d.betas[0], 1.0);
  EXPECT_DOUBLE_EQ(d.betas[1], 1.0 - r * r);
}

TEST(Durbin, MatchesDenseSolveOfNormalizedSystem) {
  const std::size_t n = 8;
  const Vector row = oracle::se_row(n);
  const DurbinSolution d = durbin(SymToeplitz(row));

  // T_{n-1}(rho) y = -(rho_1..rho_{n-1}); row[0] == 1 so rho == row.
  const SymPdMatrix t = materialize(SymToeplitz(Vector(row.begin(), row.end() - 1)));
  const SymPdMatrix inv = baseline_invert(t);
  Vector rhs(row.begin() + 1, row.end());
  for (double& v : rhs) v = -v;
  const Vector y = inv.dense() * rhs;
  ASSERT_EQ(d.y.size(), n - 1);
  for (std::size_t i = 0; i < n - 1; ++i) EXPECT_NEAR(d.y[i], y[i], 1e-10);

  EXPECT_EQ(d.betas[0], row[0]);
  for (double b : d.betas) EXPECT_GT(b, 0.0);
}

TEST(Durbin, BetasFollowReflectionRecursion) {
  std::mt19937_64 gen(17);
  const SymToeplitz t = random_toeplitz(12, gen);
  const DurbinSolution d = durbin(t);
  // Each extra dimension adds log beta_k: prefix log-dets must agree.
  for (std::size_t k = 1; k <= 12; ++k) {
    Vector prefix(t.first_row().begin(), t.first_row().begin() + static_cast<long>(k));
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += std::log(d.betas[j]);
    EXPECT_NEAR(s, oracle::lu_log_det(materialize(SymToeplitz(prefix)).dense()), 1e-10);
  }
}

TEST(Durbin, DetectsIndefinite) {
  // [[1, .9, .1], ...] has a negative eigenvalue; reflection at step 2 exceeds 1.
  try {
    durbin(SymToeplitz({1.0, 0.9, 0.1}));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.index(), 2u);
  }
  EXPECT_THROW(durbin(SymToeplitz({1.0, 1.0})), NotPositiveDefinite);
  EXPECT_THROW(trench_invert(SymToeplitz({1.0, 1.5})), NotPositiveDefinite);
  EXPECT_THROW(toeplitz_log_det(SymToeplitz({1.0, -1.2})), NotPositiveDefinite);
}

TEST(TrenchInvert, SmallHandCases) {
  EXPECT_DOUBLE_EQ(trench_invert(SymToeplitz({4.0}))(0, 0), 0.25);
  const double r = 0.4;
  const SymPdMatrix inv = trench_invert(SymToeplitz({1.0, r}));
  const double c = 1.0 / (1.0 - r * r);
  EXPECT_NEAR(inv(0, 0), c, 1e-15);
  EXPECT_NEAR(inv(1, 1), c, 1e-15);
  EXPECT_NEAR(inv(0, 1), -r * c, 1e-15);
  EXPECT_NEAR(inv(1, 0), -r * c, 1e-15);
}

TEST(TrenchInvert, BenchmarkConfigurationMatchesDenseInverse) {
  const SymToeplitz t(oracle::se_row(200));
  EXPECT_LE(max_abs_diff(trench_invert(t).dense(), invert(materialize(t)).dense()), 1e-7);
}

TEST(TrenchInvert, OracleEquivalenceProperty) {
  std::mt19937_64 gen(23);
  for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 16u, 31u, 64u, 129u}) {
    const SymToeplitz t = random_toeplitz(n, gen);
    const SymPdMatrix inv = trench_invert(t);
    EXPECT_LE(oracle::max_identity_error(oracle::matmul(inv.dense(), materialize(t).dense())), 1e-7)
        << "n=" << n;
  }
}

TEST(TrenchInvert, ExactSymmetryAndPersymmetry) {
  std::mt19937_64 gen(29);
  for (std::size_t n : {5u, 6u, 33u, 70u}) {
    const SymPdMatrix inv = trench_invert(random_toeplitz(n, gen));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ASSERT_EQ(inv(i, j), inv(j, i));
        ASSERT_EQ(inv(i, j), inv(n - 1 - j, n - 1 - i));
      }
  }
}

TEST(TrenchInvert, ScalingLaw) {
  std::mt19937_64 gen(31);
  const SymToeplitz t = random_toeplitz(40, gen);
  const SymPdMatrix b = trench_invert(t);
  // Powers of two scale the row exactly, so the result is exact too.
  for (double c : {0.25, 2.0, 1024.0}) {
    Vector scaled = t.first_row();
    for (double& v : scaled) v *= c;
    const SymPdMatrix a = trench_invert(SymToeplitz(scaled));
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 0; j < 40; ++j) ASSERT_EQ(a(i, j), b(i, j) / c);
  }
  // Otherwise c*r rounds, so compare relative to the largest entry.
  for (double c : {0.01, 3.0, 250.0}) {
    Vector scaled = t.first_row();
    for (double& v : scaled) v *= c;
    const SymPdMatrix a = trench_invert(SymToeplitz(scaled));
    const double scale = max_abs(b.dense()) / c;
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 0; j < 40; ++j) EXPECT_NEAR(a(i, j), b(i, j) / c, 1e-12 * scale);
  }
}

TEST(TrenchInvert, NearSingularWarnsInsteadOfFailing) {
  // [[1, 1-eps], [1-eps, 1]] with eps = 2^-50: beta_1 = eps (2 - eps) is
  // positive but below 1e-14, and exactly representable.
  const double eps = 0x1.0p-50;
  std::optional<ConditioningWarning> warning;
  const SymPdMatrix inv = trench_invert(SymToeplitz({1.0, 1.0 - eps}), &warning);
  ASSERT_TRUE(warning.has_value());
  EXPECT_EQ(warning->index, 1u);
  EXPECT_DOUBLE_EQ(warning->relative_beta, eps * (2.0 - eps));
  EXPECT_NEAR(inv(0, 0), 1.0 / (eps * (2.0 - eps)), 1e-6 / (eps * (2.0 - eps)));

  std::optional<ConditioningWarning> from_log_det;
  toeplitz_log_det(SymToeplitz({1.0, 1.0 - eps}), &from_log_det);
  EXPECT_TRUE(from_log_det.has_value());

  std::optional<ConditioningWarning> none;
  trench_invert(SymToeplitz(oracle::se_row(10)), &none);
  EXPECT_FALSE(none.has_value());
}

TEST(ToeplitzLogDet, HandCases) {
  EXPECT_EQ(toeplitz_log_det(SymToeplitz({1.0, 0.0, 0.0})), 0.0);
  const double r = 0.7;
  EXPECT_NEAR(toeplitz_log_det(SymToeplitz({1.0, r})), std::log(1 - r * r), 1e-15);
}

TEST(ToeplitzLogDet, MatchesCholeskyLogDet) {
  const SymToeplitz t(oracle::se_row(100));
  const double dense = log_det(materialize(t));
  EXPECT_LE(std::abs(toeplitz_log_det(t) - dense), 1e-8 * std::max(1.0, std::abs(dense)));

  std::mt19937_64 gen(37);
  for (std::size_t n : {1u, 2u, 9u, 50u, 200u}) {
    const SymToeplitz r = random_toeplitz(n, gen);
    const double ld = log_det(materialize(r));
    EXPECT_LE(std::abs(toeplitz_log_det(r) - ld), 1e-8 * std::max(1.0, std::abs(ld))) << "n=" << n;
  }
}

}  // namespace
}  // namespace gpfast
