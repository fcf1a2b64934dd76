#pragma once

// Stealth constraints for VP signalling observed by a warden through BSC(q):
// uncoded divergence, the k constant, the achievable (alpha, beta) region,
// the covert square-root-law constant, and coded message/key-size bounds.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vpstealth/binary_channel.hpp"

namespace vpstealth {

inline constexpr double kDefaultDelta = 0.01;
inline constexpr double kDefaultTheta = 0.02;
inline constexpr double kDefaultXi = 0.01;

/// delta bounds the uncoded (i.i.d.) divergence, theta the codebook-averaged
/// one. Coded analyses need 0 < delta < theta; with_theta() picks delta = theta/2.
struct StealthBudget {
  double delta = kDefaultDelta;
  double theta = kDefaultTheta;

  static StealthBudget with_theta(double theta) { return {theta / 2.0, theta}; }
  /// Throws std::domain_error on nonpositive values or delta >= theta.
  void validate_coded() const;
};

struct StealthScenario {
  VpProfile info;
  std::optional<VpProfile> obf;  ///< absent in the covert case b·n^beta = 0
  BscChannel bob;
  BscChannel warren;
  StealthBudget budget;

  /// a·n^alpha - b·n^beta
  double energy_gap(double n) const;
  /// P_{X_o,n}: point mass on 0 when obfuscation is absent.
  BernoulliDist obfuscation_input(std::uint64_t n) const;
};

struct UncodedDivergence {
  double exact;      ///< n·D(P_{Z,n} || P_{Z_o,n})
  double quadratic;  ///< n·(1/2)·(qbar-q)^2/(q qbar)·(gap/n)^2
};

/// Throws std::domain_error if a per-symbol probability is out of range.
/// exact is +inf when q = 0 and the two marginals differ.
UncodedDivergence uncoded_divergence(const StealthScenario& scenario, std::uint64_t n);

/// sqrt(2 q qbar)/(qbar - q)·sqrt(delta); +inf at q = 1/2.
double k_constant(const BscChannel& warren, double delta);

/// Same constant through the chi-squared distance of the warden's channel rows.
double k_constant_chi2(const BscChannel& warren, double delta);

/// |a·n^alpha - b·n^beta| <= k·sqrt(n)
bool uncoded_stealth_check(const StealthScenario& scenario, std::uint64_t n);

enum class CoefficientRule {
  AtMostK,      ///< alpha = 1/2 dominates: a <= k
  GapAtMostK,   ///< alpha = beta = 1/2: |a - b| <= k
  Matched,      ///< alpha = beta > 1/2 (or delta = 0): a = b
};

std::string to_string(CoefficientRule rule);

struct RegionPoint {
  double beta;
  double alpha_max;
  CoefficientRule rule;
};

struct RegionReport {
  double q;
  double delta;
  double k;
  std::vector<RegionPoint> points;
};

/// Largest information exponent alpha for which the uncoded stealth
/// constraint holds for all large n, per obfuscation exponent beta in [0, 1].
RegionReport achievable_region(std::span<const double> beta_grid, const BscChannel& warren,
                               double delta);

/// k·(1-2p)·ln(pbar/p), the square-root-law scaling constant.
double covert_scaling_constant(const BscChannel& bob, const BscChannel& warren, double delta);

struct RateKeyReport {
  std::uint64_t n;
  double xi;
  double r_alpha_max_info;  ///< a(1-2p)ln(pbar/p)
  double warren_threshold;  ///< a(1-2q)ln(qbar/q)
  double log_m_bound;       ///< n^alpha (1-xi) r_alpha_max_info
  double log_k_bound;       ///< n^alpha [(1+xi) threshold - (1-xi) r_alpha_max_info]^+
  bool keyless_feasible;
};

/// Throws std::domain_error for xi <= 0 or degenerate crossovers.
RateKeyReport rate_key_bounds(const StealthScenario& scenario, std::uint64_t n,
                              double xi = kDefaultXi);

}  // namespace vpstealth
