#include "vpstealth/binary_channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vpstealth/numeric.hpp"

namespace vpstealth {

// P1·ln(P1/Q1) + P0·ln(P0/Q0) written around the shift P1 - Q1 so that
// nearby distributions do not lose digits to cancellation inside the logs.
long double kl_divergence_shifted(long double q1, long double shift) {
  const long double q0 = 1.0L - q1;
  const long double p1 = q1 + shift;
  const long double p0 = q0 - shift;
  long double total = 0.0L;
  if (p1 > 0.0L) total += p1 * std::log1p(shift / q1);
  if (p0 > 0.0L) total += p0 * std::log1p(-shift / q0);
  return total;
}

BernoulliDist::BernoulliDist(double p1) : p1_(p1) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) {
    throw std::domain_error("BernoulliDist: probability " + std::to_string(p1) +
                            " outside [0, 1]");
  }
}

BscChannel::BscChannel(double crossover) : p_(crossover) {
  if (!(crossover >= 0.0 && crossover <= 0.5)) {
    throw std::domain_error("BscChannel: crossover " + std::to_string(crossover) +
                            " outside [0, 1/2]");
  }
}

VpProfile::VpProfile(double coeff, double expo) : coeff_(coeff), expo_(expo) {
  if (!(coeff > 0.0) || !std::isfinite(coeff)) {
    throw std::domain_error("VpProfile: coefficient must be positive");
  }
  if (!(expo >= 0.0 && expo <= 1.0)) {
    throw std::domain_error("VpProfile: exponent must lie in [0, 1]");
  }
}

double VpProfile::energy(double n) const noexcept { return coeff_ * std::pow(n, expo_); }

double VpProfile::symbol_probability(double n) const noexcept {
  // coeff·n^(expo-1) avoids forming n^expo / n for huge n.
  return coeff_ * std::pow(n, expo_ - 1.0);
}

double kl_divergence(const BernoulliDist& p, const BernoulliDist& q) {
  for (int x : {0, 1}) {
    if (q(x) == 0.0 && p(x) > 0.0) {
      throw std::domain_error("kl_divergence: P is not absolutely continuous w.r.t. Q");
    }
  }
  const long double q1 = q.p1();
  if (q1 == 0.0L || q1 == 1.0L) return 0.0;  // P == Q forced by absolute continuity
  const long double shift = static_cast<long double>(p.p1()) - q1;
  const long double d = kl_divergence_shifted(q1, shift);
  return static_cast<double>(d < 0.0L ? 0.0L : d);
}

double variational_distance(const BernoulliDist& p, const BernoulliDist& q) noexcept {
  return std::fabs(p.p1() - q.p1());
}

double chi2_distance(const BernoulliDist& p, const BernoulliDist& q) {
  if (q.p0() <= 0.0 || q.p1() <= 0.0) {
    throw std::domain_error("chi2_distance: reference distribution has a zero atom");
  }
  const long double d = static_cast<long double>(p.p1()) - q.p1();
  return static_cast<double>(d * d / q.p1() + d * d / q.p0());
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  }
  const long double lx = x;
  return static_cast<double>(-xlogx(lx) - xlogx(1.0L - lx));
}

long double binary_entropy_increment(long double p, long double d) {
  const long double pbar = 1.0L - p;
  const long double x = p + d;
  if (p <= 0.0L || pbar <= 0.0L || x <= 0.0L || x >= 1.0L) {
    return (-xlogx(x) - xlogx(1.0L - x)) - (-xlogx(p) - xlogx(pbar));
  }
  // d·ln(pbar/p) - (p+d)·log1p(d/p) - (pbar-d)·log1p(-d/pbar)
  CompensatedSum acc;
  acc.add(d * std::log(pbar / p));
  acc.add(-x * std::log1p(d / p));
  acc.add(-(pbar - d) * std::log1p(-d / pbar));
  return acc.value();
}

BernoulliDist output_marginal(const BernoulliDist& input, const BscChannel& ch) noexcept {
  const double p = ch.crossover();
  return BernoulliDist(p + (1.0 - 2.0 * p) * input.p1());
}

BernoulliDist vp_input_dist(const VpProfile& profile, std::uint64_t n) {
  if (n == 0) throw std::domain_error("vp_input_dist: blocklength must be positive");
  const double prob = profile.symbol_probability(static_cast<double>(n));
  if (prob > 1.0) {
    throw std::domain_error("vp_input_dist: coeff·n^expo/n = " + std::to_string(prob) +
                            " exceeds 1 at n = " + std::to_string(n));
  }
  return BernoulliDist(prob);
}

MutualInformation mutual_information_vp(const VpProfile& profile, std::uint64_t n,
                                        const BscChannel& ch) {
  const double eps = vp_input_dist(profile, n).p1();
  const long double p = ch.crossover();
  const long double slope = 1.0L - 2.0L * p;
  const long double exact = binary_entropy_increment(p, slope * eps);

  double taylor;
  if (eps == 0.0 || slope == 0.0L) {
    taylor = 0.0;
  } else if (p == 0.0L) {
    taylor = std::numeric_limits<double>::infinity();
  } else {
    taylor = static_cast<double>(slope * eps * std::log((1.0L - p) / p));
  }
  return {static_cast<double>(exact), taylor};
}

}  // namespace vpstealth
