#pragma once

// Reproducible random streams.
//
// xoshiro256** (Blackman & Vigna) seeded through SplitMix64. A stream is
// identified by (seed, stream id), so Monte-Carlo trials can be run in any
// order or on any number of threads and still see the same numbers.
// Samplers below are written out explicitly because the standard library
// distributions are not specified bit-for-bit across implementations.

#include <cstdint>
#include <limits>
#include <string_view>

namespace vpstealth {

inline constexpr std::string_view kRngAlgorithm = "xoshiro256**/splitmix64";

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;
  /// Independent stream `stream` derived from `seed`.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on (0, 1].
  double uniform_open0() noexcept;
  /// Uniform integer in [0, bound), bound > 0, without modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound) noexcept;
  /// Number of failures before the next success in Bernoulli(p) trials,
  /// given log1m_p = ln(1 - p) with p in (0, 1).
  std::uint64_t geometric_skip(double log1m_p) noexcept;

private:
  std::uint64_t s_[4];
};

}  // namespace vpstealth
