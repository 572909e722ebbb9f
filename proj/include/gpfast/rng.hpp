#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>

namespace gpfast {

/// Seeded random stream of uniforms and standard normals.
///
/// The engine is mt19937_64, whose output sequence is fixed by the C++
/// standard; uniforms and normals are derived here (53-bit open-interval
/// uniforms, Box-Muller pairs) rather than through <random> distributions,
/// whose algorithms vary between standard libraries. Not thread-safe: use
/// one RngState per thread.
class RngState {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/box-muller";

  explicit RngState(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::string_view algorithm() const noexcept { return kAlgorithm; }

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  /// Uniform on (lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal.
  double normal() noexcept;
  void fill_normal(std::span<double> out) noexcept {
    for (double& z : out) z = normal();
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace gpfast
