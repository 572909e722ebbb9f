#include "gpfast/demo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gpfast/csv.hpp"
#include "gpfast/errors.hpp"

namespace gpfast {

void WarpedSignalModel::validate() const {
  if (!(period > 0.0)) throw std::invalid_argument("period must be > 0");
  if (!(noise_sd > 0.0)) throw std::invalid_argument("noise_sd must be > 0");
  kernel.validate();
}

double WarpedSignalModel::signal(std::size_t i, double warp) const noexcept {
  return amplitude * std::sin((grid[i] + warp) / period);
}

double WarpedSignalModel::log_likelihood(std::span<const double> observed,
                                         std::span<const double> warp) const {
  const double norm = -0.5 * std::log(2.0 * std::numbers::pi * noise_sd * noise_sd);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double r = (observed[i] - signal(i, warp[i])) / noise_sd;
    sum += norm - 0.5 * r * r;
  }
  return sum;
}

MvnParams WarpedSignalModel::prior() const {
  return MvnParams::centered(se_covariance_toeplitz(grid, kernel));
}

WarpedSignalModel DemoOptions::model() const {
  WarpedSignalModel m;
  m.amplitude = amplitude;
  m.period = period;
  m.noise_sd = noise_sd;
  m.grid = TimeGrid::linspace(n, 0.0, 2.0 * std::numbers::pi);
  m.kernel = SeKernelParams::with_default_jitter(sigma, phi);
  return m;
}

std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream) noexcept {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(stream);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double rmse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

Vector reference_prior_draw(const DemoOptions& options) {
  const WarpedSignalModel model = options.model();
  RngState rng(derive_seed(options.seed, SeedStream::reference));
  const Matrix draw = rmvnorm(model.prior(), 1, rng);
  return Vector(draw.data().begin(), draw.data().end());
}

DemoOutput run_demo(const DemoOptions& options) {
  if (options.n < 2) throw std::invalid_argument("demo needs n >= 2");
  if (options.iters < kSnapshotIterations.back())
    throw std::invalid_argument("demo needs iters >= " + std::to_string(kSnapshotIterations.back()));
  const WarpedSignalModel model = options.model();
  model.validate();
  const std::size_t n = options.n;
  const MvnParams prior = model.prior();

  DemoOutput out;
  out.t = model.grid.points();

  RngState data_rng(derive_seed(options.seed, SeedStream::data));
  const Matrix truth = rmvnorm(prior, 1, data_rng);
  out.truth.assign(truth.data().begin(), truth.data().end());
  out.observed.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.observed[i] = model.signal(i, out.truth[i]) + model.noise_sd * data_rng.normal();

  EssConfig config;
  config.n_iter = options.iters;
  config.burn_in = 0;
  config.prior = prior;
  config.seed = derive_seed(options.seed, SeedStream::chain);
  const Vector& observed = out.observed;
  out.chain = ess_run(
      [&model, &observed](std::span<const double> w) { return model.log_likelihood(observed, w); },
      config);

  const Matrix& samples = out.chain.samples;
  const double count = static_cast<double>(samples.rows());
  out.posterior_mean.assign(n, 0.0);
  out.posterior_sd.assign(n, 0.0);
  for (std::size_t r = 0; r < samples.rows(); ++r)
    for (std::size_t i = 0; i < n; ++i) out.posterior_mean[i] += samples(r, i);
  for (double& m : out.posterior_mean) m /= count;
  for (std::size_t r = 0; r < samples.rows(); ++r)
    for (std::size_t i = 0; i < n; ++i) {
      const double d = samples(r, i) - out.posterior_mean[i];
      out.posterior_sd[i] += d * d;
    }
  out.envelope_lower.resize(n);
  out.envelope_upper.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.posterior_sd[i] = std::sqrt(out.posterior_sd[i] / std::max(count - 1.0, 1.0));
    out.envelope_lower[i] = out.posterior_mean[i] - 2.0 * out.posterior_sd[i];
    out.envelope_upper[i] = out.posterior_mean[i] + 2.0 * out.posterior_sd[i];
  }

  out.snapshots = Matrix(kSnapshotIterations.size(), n);
  for (std::size_t s = 0; s < kSnapshotIterations.size(); ++s) {
    auto src = samples.row(kSnapshotIterations[s] - 1 - config.burn_in);
    std::copy(src.begin(), src.end(), out.snapshots.row(s).begin());
  }
  return out;
}

void write_demo(const DemoOutput& out, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const std::size_t n = out.t.size();

  csv::Table truth{{"index", "t", "truth_w"}, {}};
  csv::Table obs{{"index", "t", "obs_s"}, {}};
  csv::Table summary{{"index", "t", "truth_w", "obs_s", "post_mean", "post_lo2sd", "post_hi2sd"}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = csv::format(i);
    const auto t = csv::format(out.t[i]);
    truth.rows.push_back({idx, t, csv::format(out.truth[i])});
    obs.rows.push_back({idx, t, csv::format(out.observed[i])});
    summary.rows.push_back({idx, t, csv::format(out.truth[i]), csv::format(out.observed[i]),
                            csv::format(out.posterior_mean[i]), csv::format(out.envelope_lower[i]),
                            csv::format(out.envelope_upper[i])});
  }

  csv::Table snaps;
  snaps.header.push_back("iteration");
  for (std::size_t i = 0; i < n; ++i) snaps.header.push_back("w" + std::to_string(i));
  for (std::size_t s = 0; s < kSnapshotIterations.size(); ++s) {
    csv::Row row{csv::format(kSnapshotIterations[s])};
    for (double v : out.snapshots.row(s)) row.push_back(csv::format(v));
    snaps.rows.push_back(std::move(row));
  }

  csv::write(dir / "truth.csv", truth);
  csv::write(dir / "observations.csv", obs);
  csv::write(dir / "posterior_summary.csv", summary);
  csv::write(dir / "snapshots.csv", snaps);
}

}  // namespace gpfast
