#include "gpfast/ess.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gpfast/config.hpp"
#include "gpfast/errors.hpp"

namespace gpfast {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked(double value) {
  if (std::isnan(value) || value == std::numeric_limits<double>::infinity())
    throw NonFiniteLikelihood(value);
  return value;
}

double initial_loglik(const LogLikelihood& loglik, std::span<const double> f) {
  const double value = checked(loglik(f));
  if (value == -std::numeric_limits<double>::infinity())
    throw InvalidState("current state has zero likelihood");
  return value;
}

EssChain run_chain(const LogLikelihood& loglik, const EssConfig& config, const PriorDraw& draw_nu,
                   const std::function<void(RngState&, std::span<double>)>& draw_initial) {
  const std::size_t n = config.prior.dim();
  RngState rng(config.seed);

  Vector f(n);
  if (config.initial)
    f = *config.initial;
  else
    draw_initial(rng, f);
  double ll = initial_loglik(loglik, f);

  EssChain chain;
  chain.seed = config.seed;
  chain.samples = Matrix(config.n_iter - config.burn_in, n);
  chain.loglik_trace.reserve(config.n_iter);
  chain.shrink_counts.reserve(config.n_iter);

  for (std::size_t it = 0; it < config.n_iter; ++it) {
    EssStep step = ess_transition(f, ll, loglik, draw_nu, config.prior.mu, rng);
    f = std::move(step.state);
    ll = step.loglik;
    chain.loglik_trace.push_back(ll);
    chain.shrink_counts.push_back(step.shrinks);
    if (it >= config.burn_in) {
      auto row = chain.samples.row(it - config.burn_in);
      std::copy(f.begin(), f.end(), row.begin());
    }
  }
  return chain;
}

}  // namespace

void EssConfig::validate() const {
  if (n_iter == 0) throw std::invalid_argument("n_iter must be positive");
  if (burn_in >= n_iter) throw std::invalid_argument("burn_in must be smaller than n_iter");
  prior.validate();
  if (initial && initial->size() != prior.dim())
    throw DimensionMismatch(prior.dim(), initial->size());
}

EssStep ess_transition(std::span<const double> f, double loglik_f, const LogLikelihood& loglik,
                       const PriorDraw& draw_nu, std::span<const double> mu, RngState& rng) {
  const std::size_t n = f.size();
  Vector nu(n);
  draw_nu(rng, nu);
  const double log_y = loglik_f + std::log(rng.uniform());

  double theta = rng.uniform(0.0, kTwoPi);
  double lo = theta - kTwoPi;
  double hi = theta;

  EssStep out;
  out.state.resize(n);
  for (;;) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::size_t i = 0; i < n; ++i) out.state[i] = (f[i] - mu[i]) * c + nu[i] * s + mu[i];
    out.loglik = checked(loglik(out.state));
    if (out.loglik > log_y) break;

    if (theta < 0.0)
      lo = theta;
    else
      hi = theta;
    if (++out.shrinks > kMaxEssShrinks) throw ShrinkLimitExceeded(kMaxEssShrinks);
    theta = rng.uniform(lo, hi);
  }
  assert(out.loglik > log_y);
  return out;
}

EssStep ess_step(std::span<const double> f, const LogLikelihood& loglik, const MvnParams& prior,
                 RngState& rng) {
  prior.validate();
  if (f.size() != prior.dim()) throw DimensionMismatch(prior.dim(), f.size());
  const double ll = initial_loglik(loglik, f);
  const MvnSampler sampler(prior);
  const PriorDraw draw_nu = [&sampler](RngState& r, std::span<double> out) {
    Vector z(out.size());
    r.fill_normal(z);
    sampler.transform(z, out);
  };
  return ess_transition(f, ll, loglik, draw_nu, prior.mu, rng);
}

EssChain ess_run(const LogLikelihood& loglik, const EssConfig& config) {
  config.validate();
  const MvnSampler sampler(config.prior);
  const PriorDraw draw_nu = [&sampler](RngState& r, std::span<double> out) {
    Vector z(out.size());
    r.fill_normal(z);
    sampler.transform(z, out);
  };
  const auto draw_initial = [&sampler](RngState& r, std::span<double> out) {
    sampler.draw(r, out);
  };
  return run_chain(loglik, config, draw_nu, draw_initial);
}

EssChain baseline_ess_run(const LogLikelihood& loglik, const EssConfig& config) {
  config.validate();
  const MvnParams prior{config.prior.mu, dense(config.prior.cov)};
  const MvnParams centered = MvnParams::centered(prior.cov);
  const PriorDraw draw_nu = [&centered](RngState& r, std::span<double> out) {
    const Matrix draw = baseline_sample_eigen(centered, 1, r);
    std::copy(draw.data().begin(), draw.data().end(), out.begin());
  };
  const auto draw_initial = [&prior](RngState& r, std::span<double> out) {
    const Matrix draw = baseline_sample_eigen(prior, 1, r);
    std::copy(draw.data().begin(), draw.data().end(), out.begin());
  };
  return run_chain(loglik, config, draw_nu, draw_initial);
}

}  // namespace gpfast
