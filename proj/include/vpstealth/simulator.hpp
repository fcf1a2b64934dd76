#pragma once

// Monte-Carlo realization of the keyed random-coding experiment: Alice draws
// M·K codewords i.i.d. from P_{X,n}, sends codeword (w, v) for message w and
// shared key v, Bob decodes within subcodebook v, and the warden observes the
// output of BSC(q).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vpstealth/binary_channel.hpp"
#include "vpstealth/bitstring.hpp"
#include "vpstealth/exponents.hpp"
#include "vpstealth/oracle.hpp"
#include "vpstealth/rng.hpp"
#include "vpstealth/stealth_region.hpp"

namespace vpstealth {

/// Fills the first n symbols of `row` with i.i.d. Bernoulli(p1) draws.
void fill_bernoulli(std::span<std::uint64_t> row, std::size_t n, double p1, Rng& rng);

/// Every symbol of the m·k words is an independent Bernoulli(input.p1()) draw.
Codebook generate_codebook(std::size_t n, std::size_t m, std::size_t k,
                           const BernoulliDist& input, Rng& rng);

/// Flips each symbol independently with probability ch.crossover().
BitString transmit(const BitString& word, const BscChannel& ch, Rng& rng);
void transmit_inplace(std::span<std::uint64_t> bits, std::size_t n, const BscChannel& ch,
                      Rng& rng);

/// Maximum-likelihood (minimum Hamming distance) decoding within subcodebook
/// `key`; ties go to the smallest message index. Throws std::domain_error
/// for p >= 1/2, where minimum distance is no longer ML.
std::size_t ml_decode(std::span<const std::uint64_t> y, const Codebook& code, std::size_t key,
                      const BscChannel& ch);

struct TrialConfig {
  StealthScenario scenario;
  std::uint64_t n = 0;
  std::uint64_t m = 2;
  std::uint64_t k = 1;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  /// One codebook for all trials instead of a fresh draw per trial.
  bool fixed_codebook = false;
  /// Uniform message instead of always sending message 0.
  bool uniform_message = false;
  /// Keep per-trial outcomes in SimReport::trace.
  bool record_trace = false;
  /// Warden statistics enumerate exactly up to this blocklength.
  unsigned exact_cap = 16;

  /// Throws std::invalid_argument on trials == 0, n == 0, m == 0 or k == 0.
  void validate() const;
};

struct ProportionEstimate {
  std::uint64_t events;
  std::uint64_t trials;
  double rate;
  double ci_low;
  double ci_high;
  double half_width;
};

/// Wilson score interval at the given normal quantile (default 95%).
ProportionEstimate wilson_interval(std::uint64_t events, std::uint64_t trials,
                                   double z = 1.959963984540054);

struct WarrenEstimate {
  /// "exact-enumeration" (exact inner divergence, sampled codebooks) or
  /// "llr-estimate" (plug-in log-likelihood ratio, sampled codebooks and outputs).
  std::string method;
  SampledMean divergence;       ///< E[D(P_{Z^n|C} || P_{Zo}^n)]
  SampledMean resolvability;    ///< E[D(P_{Z^n|C} || P_Z^n)], term (a)
  double term_b;                ///< n·D(P_{Z,n} || P_{Zo,n})
  double r_mk;                  ///< ln(MK) / n^alpha
  double threshold;             ///< a(1-2q)ln(qbar/q)
  std::optional<ResolvabilityBound> analytic;
};

struct SimReport {
  explicit SimReport(TrialConfig cfg) : config(std::move(cfg)) {}

  TrialConfig config;
  std::string rng_algorithm{kRngAlgorithm};
  std::uint64_t codebooks_sampled = 0;
  std::optional<ProportionEstimate> error;
  std::optional<BlockBound> gallager_bound;
  std::optional<WarrenEstimate> warren;
  std::vector<std::uint8_t> trace;
};

/// Bob-side error rate with its Wilson interval and the finite-n random
/// coding bound (M-1)^rho e^{-n E0(rho)}. Requires m >= 2 and p < 1/2.
SimReport run_reliability_trials(const TrialConfig& cfg, Execution exec = Execution::Parallel);

/// Warden-side distinguishability of the coded transmission from i.i.d.
/// obfuscation, with term (b) and the analytic resolvability bound.
SimReport warren_statistics(const TrialConfig& cfg, Execution exec = Execution::Parallel);

}  // namespace vpstealth
