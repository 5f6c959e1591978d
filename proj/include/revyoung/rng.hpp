#pragma once

#include <cstdint>
#include <string_view>

namespace revyoung {

/// Counter-based generator.  Word k (k = 0, 1, ...) of stream (seed, key) is
///   mix64(base + (k + 1) * 0x9E3779B97F4A7C15),  base = mix64(seed ^ mix64(key))
/// where mix64 is the SplitMix64 finalizer.  Any (seed, key, k) can be computed
/// independently, so generation over disjoint keys parallelizes without changing
/// results.
class CounterRng {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64-counter/v1";

  CounterRng(std::uint64_t seed, std::uint64_t key);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller (one draw per call).
  double normal();

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

/// Stream key for sample `index` and a small role tag (< 16).
[[nodiscard]] constexpr std::uint64_t stream_key(std::uint64_t index, std::uint64_t role) {
  return (index << 4) | (role & 0xF);
}

}  // namespace revyoung
