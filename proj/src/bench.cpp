#include "gpfast/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "gpfast/baseline.hpp"
#include "gpfast/csv.hpp"
#include "gpfast/demo.hpp"
#include "gpfast/ess.hpp"
#include "gpfast/kernels.hpp"
#include "gpfast/linalg.hpp"
#include "gpfast/mvn.hpp"
#include "gpfast/toeplitz.hpp"

namespace gpfast {
namespace {

using Clock = std::chrono::steady_clock;

// Keeps results observable so timed calls are not optimized out.
volatile double g_sink = 0.0;

constexpr std::size_t kBenchDraws = 10;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

double median_seconds(const std::function<void()>& fn, std::size_t reps, double min_rep_seconds) {
  if (reps == 0) throw std::invalid_argument("reps must be positive");
  auto start = Clock::now();
  fn();
  const double warm = seconds_since(start);
  const std::size_t inner =
      warm >= min_rep_seconds ? 1 : static_cast<std::size_t>(std::ceil(min_rep_seconds / std::max(warm, 1e-9)));

  std::vector<double> times(reps);
  for (auto& t : times) {
    start = Clock::now();
    for (std::size_t k = 0; k < inner; ++k) fn();
    t = seconds_since(start) / static_cast<double>(inner);
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = reps / 2;
  return reps % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

void BenchOptions::validate() const {
  if (sizes.empty()) throw std::invalid_argument("at least one size is required");
  for (std::size_t n : sizes)
    if (n < 2) throw std::invalid_argument("benchmark sizes must be >= 2");
  if (reps < 3) throw std::invalid_argument("reps must be >= 3");
  if (ess_iters == 0) throw std::invalid_argument("ess_iters must be positive");
  if (density_evals == 0) throw std::invalid_argument("density_evals must be positive");
}

BenchReport run_bench(const BenchOptions& options) {
  options.validate();
  BenchReport report;
  const std::size_t reps = options.reps;

  for (std::size_t n : options.sizes) {
    const TimeGrid grid = TimeGrid::regular(n, 0.0, 1.0);
    const SeKernelParams kernel =
        options.jitter ? SeKernelParams::with_default_jitter(1.0, 1.0) : SeKernelParams{1.0, 1.0, 0.0};
    const SymPdMatrix sigma = se_covariance(grid, kernel);
    const SymToeplitz toep = se_covariance_toeplitz(grid, kernel);
    const MvnParams dense_params = MvnParams::centered(sigma);
    const MvnParams toep_params = MvnParams::centered(toep);

    RngState rng(options.seed);
    const Matrix xs = rmvnorm(dense_params, 1, rng);
    const Vector x(xs.data().begin(), xs.data().end());

    auto add = [&](std::string op, std::string base, const std::function<void()>& fast,
                   const std::function<void()>& slow) {
      BenchRow row{std::move(op), std::move(base), n, reps, 0.0, 0.0, 0.0};
      row.fast_median_s = median_seconds(fast, reps);
      row.base_median_s = median_seconds(slow, reps);
      row.ratio = row.base_median_s / row.fast_median_s;
      report.rows.push_back(std::move(row));
    };

    const auto slow_invert = [&] { g_sink = baseline_invert(sigma)(0, 0); };
    add("invert", "baseline_invert", [&] { g_sink = invert(sigma)(0, 0); }, slow_invert);
    add("trench_invert", "baseline_invert", [&] { g_sink = trench_invert(toep)(0, 0); }, slow_invert);
    add("log_det", "baseline_log_det", [&] { g_sink = log_det(sigma); },
        [&] { g_sink = baseline_log_det(sigma); });

    const auto slow_density = [&] { g_sink = baseline_log_dmvnorm(x, dense_params); };
    add("log_dmvnorm_toeplitz", "baseline_log_dmvnorm", [&] { g_sink = log_dmvnorm(x, toep_params); },
        slow_density);
    add("log_dmvnorm_dense", "baseline_log_dmvnorm", [&] { g_sink = log_dmvnorm(x, dense_params); },
        slow_density);

    const std::size_t evals = options.density_evals;
    add(
        "log_dmvnorm_cached", "log_dmvnorm",
        [&] {
          const LogDensityCache cache(dense_params.cov);
          double s = 0.0;
          for (std::size_t k = 0; k < evals; ++k) s += log_dmvnorm_cached(x, cache, dense_params.mu);
          g_sink = s;
        },
        [&] {
          double s = 0.0;
          for (std::size_t k = 0; k < evals; ++k) s += log_dmvnorm(x, dense_params);
          g_sink = s;
        });

    RngState draw_rng(options.seed);
    add("rmvnorm", "baseline_sample_eigen",
        [&] { g_sink = rmvnorm(dense_params, kBenchDraws, draw_rng)(0, 0); },
        [&] { g_sink = baseline_sample_eigen(dense_params, kBenchDraws, draw_rng)(0, 0); });

    // Warped-signal inference on the benchmark grid; both samplers see the
    // same likelihood and differ only in how prior draws are made.
    WarpedSignalModel model;
    model.grid = grid;
    model.kernel = kernel;
    Vector observed(n);
    for (std::size_t i = 0; i < n; ++i) observed[i] = model.signal(i, x[i]) + model.noise_sd * rng.normal();
    const LogLikelihood loglik = [&model, &observed](std::span<const double> w) {
      return model.log_likelihood(observed, w);
    };
    EssConfig config;
    config.n_iter = options.ess_iters;
    config.prior = dense_params;
    config.seed = options.seed;
    add("ess_run", "baseline_ess_run", [&] { g_sink = ess_run(loglik, config).loglik_trace.back(); },
        [&] { g_sink = baseline_ess_run(loglik, config).loglik_trace.back(); });
  }
  return report;
}

void write_bench_csv(const BenchReport& report, const std::filesystem::path& path) {
  csv::Table table{{"op", "baseline", "n", "reps", "fast_median_s", "base_median_s", "ratio"}, {}};
  for (const auto& r : report.rows)
    table.rows.push_back({r.op, r.baseline, csv::format(r.n), csv::format(r.reps),
                          csv::format(r.fast_median_s), csv::format(r.base_median_s),
                          csv::format_ratio(r.ratio)});
  csv::write(path, table);
}

}  // namespace gpfast
