#include "vpstealth/stealth_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vpstealth/exponents.hpp"

namespace vpstealth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_delta(double delta, const char* who) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::domain_error(std::string(who) + ": delta must be positive");
  }
}

}  // namespace

void StealthBudget::validate_coded() const {
  if (!(delta > 0.0) || !(theta > 0.0)) {
    throw std::domain_error("StealthBudget: delta and theta must be positive");
  }
  if (!(delta < theta)) {
    throw std::domain_error("StealthBudget: coded analysis requires delta < theta");
  }
}

double StealthScenario::energy_gap(double n) const {
  return info.energy(n) - (obf ? obf->energy(n) : 0.0);
}

BernoulliDist StealthScenario::obfuscation_input(std::uint64_t n) const {
  return obf ? vp_input_dist(*obf, n) : BernoulliDist(0.0);
}

UncodedDivergence uncoded_divergence(const StealthScenario& scenario, std::uint64_t n) {
  vp_input_dist(scenario.info, n);  // range check only
  const double eps_obf = scenario.obfuscation_input(n).p1();
  const long double q = scenario.warren.crossover();
  const long double nn = static_cast<long double>(n);
  // Per-symbol gap straight from the energies keeps tiny gaps exact.
  const long double gap = static_cast<long double>(scenario.energy_gap(static_cast<double>(n))) / nn;

  if (gap == 0.0L) return {0.0, 0.0};
  if (q == 0.0L) return {kInf, kInf};

  const long double slope = 1.0L - 2.0L * q;
  const long double z_obf = q + slope * eps_obf;
  const long double shift = slope * gap;
  const long double exact = nn * kl_divergence_shifted(z_obf, shift);
  const long double quad = nn * 0.5L * slope * slope / (q * (1.0L - q)) * gap * gap;
  return {static_cast<double>(exact), static_cast<double>(quad)};
}

double k_constant(const BscChannel& warren, double delta) {
  require_delta(delta, "k_constant");
  const double q = warren.crossover();
  if (q == 0.5) return kInf;
  return std::sqrt(2.0 * q * (1.0 - q)) / (1.0 - 2.0 * q) * std::sqrt(delta);
}

double k_constant_chi2(const BscChannel& warren, double delta) {
  require_delta(delta, "k_constant_chi2");
  const double q = warren.crossover();
  if (q == 0.5) return kInf;
  if (q == 0.0) return 0.0;
  const BernoulliDist row1(warren.transition(1, 1));
  const BernoulliDist row0(warren.transition(1, 0));
  return std::sqrt(2.0 / chi2_distance(row1, row0)) * std::sqrt(delta);
}

bool uncoded_stealth_check(const StealthScenario& scenario, std::uint64_t n) {
  const double nn = static_cast<double>(n);
  return std::fabs(scenario.energy_gap(nn)) <=
         k_constant(scenario.warren, scenario.budget.delta) * std::sqrt(nn);
}

std::string to_string(CoefficientRule rule) {
  switch (rule) {
    case CoefficientRule::AtMostK: return "a<=k";
    case CoefficientRule::GapAtMostK: return "|a-b|<=k";
    case CoefficientRule::Matched: return "a=b";
  }
  return "unknown";
}

RegionReport achievable_region(std::span<const double> beta_grid, const BscChannel& warren,
                               double delta) {
  if (!(delta >= 0.0)) throw std::domain_error("achievable_region: delta must be >= 0");
  if (warren.crossover() == 0.5) {
    throw std::domain_error("achievable_region: q = 1/2 leaves the warden blind (k infinite)");
  }
  RegionReport report{warren.crossover(), delta, delta > 0.0 ? k_constant(warren, delta) : 0.0,
                      {}};
  report.points.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
      throw std::domain_error("achievable_region: beta outside [0, 1]");
    }
    RegionPoint pt{beta, 0.0, CoefficientRule::Matched};
    if (report.k == 0.0 || beta > 0.5) {
      pt.alpha_max = beta;
    } else if (beta == 0.5) {
      pt.alpha_max = 0.5;
      pt.rule = CoefficientRule::GapAtMostK;
    } else {
      pt.alpha_max = 0.5;
      pt.rule = CoefficientRule::AtMostK;
    }
    report.points.push_back(pt);
  }
  return report;
}

double covert_scaling_constant(const BscChannel& bob, const BscChannel& warren, double delta) {
  const double p = bob.crossover();
  const double q = warren.crossover();
  if (p == 0.0) throw std::domain_error("covert_scaling_constant: p = 0 is degenerate");
  if (q == 0.0 || q == 0.5) {
    throw std::domain_error("covert_scaling_constant: requires 0 < q < 1/2");
  }
  return k_constant(warren, delta) * r_alpha_max(1.0, bob);
}

RateKeyReport rate_key_bounds(const StealthScenario& scenario, std::uint64_t n, double xi) {
  if (!(xi > 0.0)) throw std::domain_error("rate_key_bounds: xi must be positive");
  if (n == 0) throw std::domain_error("rate_key_bounds: n must be positive");
  if (scenario.bob.crossover() == 0.0 || scenario.warren.crossover() == 0.0) {
    throw std::domain_error("rate_key_bounds: p and q must be positive");
  }
  const double a = scenario.info.coeff();
  const double scale = std::pow(static_cast<double>(n), scenario.info.expo());
  RateKeyReport r{};
  r.n = n;
  r.xi = xi;
  r.r_alpha_max_info = r_alpha_max(a, scenario.bob);
  r.warren_threshold = r_alpha_max(a, scenario.warren);
  r.log_m_bound = scale * (1.0 - xi) * r.r_alpha_max_info;
  const double bracket = (1.0 + xi) * r.warren_threshold - (1.0 - xi) * r.r_alpha_max_info;
  r.log_k_bound = scale * std::max(bracket, 0.0);
  r.keyless_feasible = r.log_k_bound == 0.0;
  return r;
}

}  // namespace vpstealth
