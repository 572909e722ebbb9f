#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gpfast/matrix.hpp"
#include "gpfast/mvn.hpp"
#include "gpfast/rng.hpp"

namespace gpfast {

/// Log-likelihood of the latent vector. Must be deterministic; may return
/// -infinity but never NaN or +infinity.
using LogLikelihood = std::function<double(std::span<const double>)>;

/// Writes one draw nu ~ N(0, Sigma_prior) into its output span.
using PriorDraw = std::function<void(RngState&, std::span<double>)>;

struct EssStep {
  Vector state;
  double loglik = 0.0;
  std::size_t shrinks = 0;
};

struct EssConfig {
  std::size_t n_iter = 1000;
  std::size_t burn_in = 0;
  MvnParams prior;
  std::uint64_t seed = 0;
  /// Starting state; nullopt starts from a single prior draw.
  std::optional<Vector> initial;

  /// Throws std::invalid_argument or DimensionMismatch on inconsistent settings.
  void validate() const;
};

struct EssChain {
  /// (n_iter - burn_in) x n, one retained state per row.
  Matrix samples;
  /// log-likelihood of the state after every iteration, burn-in included.
  Vector loglik_trace;
  /// bracket shrinks in every iteration, burn-in included.
  std::vector<std::size_t> shrink_counts;
  std::uint64_t seed = 0;
};

/// One elliptical slice sampling transition from state f whose
/// log-likelihood is `loglik_f`.
///
/// Random draws are consumed in a fixed order: nu, then the slice uniform,
/// then the initial angle, then one uniform per bracket shrink.
EssStep ess_transition(std::span<const double> f, double loglik_f, const LogLikelihood& loglik,
                       const PriorDraw& draw_nu, std::span<const double> mu, RngState& rng);

/// Convenience transition that factors the prior itself and evaluates loglik(f).
/// Throws InvalidState if loglik(f) is -infinity.
EssStep ess_step(std::span<const double> f, const LogLikelihood& loglik, const MvnParams& prior,
                 RngState& rng);

/// Runs the chain, factoring the prior covariance once.
EssChain ess_run(const LogLikelihood& loglik, const EssConfig& config);

/// Same chain algorithm, but every prior draw re-decomposes the covariance
/// with baseline_sample_eigen. Benchmark reference only.
EssChain baseline_ess_run(const LogLikelihood& loglik, const EssConfig& config);

}  // namespace gpfast
