#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace gpfast {

/// Median wall time of `fn`, in seconds per call.
///
/// One warm-up call is discarded and also sizes an inner loop so each timed
/// repetition lasts at least `min_rep_seconds`; the monotonic clock is used.
double median_seconds(const std::function<void()>& fn, std::size_t reps,
                      double min_rep_seconds = 2e-3);

struct BenchRow {
  std::string op;
  std::string baseline;
  std::size_t n = 0;
  std::size_t reps = 0;
  double fast_median_s = 0.0;
  double base_median_s = 0.0;
  double ratio = 0.0;  ///< base_median_s / fast_median_s
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

struct BenchOptions {
  std::vector<std::size_t> sizes{200};
  std::size_t reps = 5;
  std::uint64_t seed = 42;
  bool jitter = true;
  /// Chain length for the sampler comparison.
  std::size_t ess_iters = 1000;
  /// Evaluations per repetition for the cached-density comparison.
  std::size_t density_evals = 1000;

  /// Throws std::invalid_argument unless every size >= 2 and reps >= 3.
  void validate() const;
};

/// Times every fast routine against its naive counterpart on the SE kernel
/// matrix (sigma = phi = 1, unit-spaced grid) at each requested size.
BenchReport run_bench(const BenchOptions& options);

/// Columns: op,baseline,n,reps,fast_median_s,base_median_s,ratio
void write_bench_csv(const BenchReport& report, const std::filesystem::path& path);

}  // namespace gpfast
