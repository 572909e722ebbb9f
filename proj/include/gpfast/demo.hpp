#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>

#include "gpfast/ess.hpp"
#include "gpfast/kernels.hpp"

namespace gpfast {

/// Observation model s_i = A sin((t_i + w_i) / T) + eps_i, eps_i ~ N(0, noise_sd^2),
/// with a zero-mean SE Gaussian-process prior on the warping w.
struct WarpedSignalModel {
  double amplitude = 1.0;
  double period = 1.0;
  double noise_sd = 0.001;
  TimeGrid grid = TimeGrid::linspace(100, 0.0, 6.283185307179586);
  SeKernelParams kernel = SeKernelParams::with_default_jitter(1.0, 1.0);

  void validate() const;
  double signal(std::size_t i, double warp) const noexcept;
  double log_likelihood(std::span<const double> observed, std::span<const double> warp) const;
  /// Prior on w: zero mean, Toeplitz SE covariance on the grid.
  MvnParams prior() const;
};

struct DemoOptions {
  std::size_t n = 100;
  std::size_t iters = 1000;
  std::uint64_t seed = 42;
  double amplitude = 1.0;
  double period = 1.0;
  double noise_sd = 0.001;
  double sigma = 1.0;
  double phi = 1.0;

  /// Grid of n points on [0, 2 pi] and the kernel with default jitter.
  WarpedSignalModel model() const;
};

inline constexpr std::array<std::size_t, 6> kSnapshotIterations{100, 300, 500, 700, 900, 1000};

struct DemoOutput {
  Vector t;
  Vector truth;
  Vector observed;
  Vector posterior_mean;
  Vector posterior_sd;
  Vector envelope_lower;
  Vector envelope_upper;
  /// One row per entry of kSnapshotIterations.
  Matrix snapshots;
  EssChain chain;
};

/// Streams derived from the user seed: truth and noise, chain, reference prior draw.
enum class SeedStream : std::uint64_t { data = 1, chain = 2, reference = 3 };
std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream) noexcept;

/// Simulates a warping and its observations, then samples the posterior of w.
/// Throws std::invalid_argument if iters < 1000 or n < 2.
DemoOutput run_demo(const DemoOptions& options);

/// An independent draw from the demo prior, used as the "no inference" reference.
Vector reference_prior_draw(const DemoOptions& options);

double rmse(std::span<const double> a, std::span<const double> b);

/// Writes truth.csv, observations.csv, posterior_summary.csv and snapshots.csv.
void write_demo(const DemoOutput& out, const std::filesystem::path& dir);

}  // namespace gpfast
