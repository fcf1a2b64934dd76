#include "vpstealth/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vpstealth {

namespace {

void require_rho(double rho, double lo, double hi, const char* who) {
  if (!(rho >= lo && rho <= hi)) {
    throw std::domain_error(std::string(who) + ": rho = " + std::to_string(rho) +
                            " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "]");
  }
}

// Log-domain E0 for a binary input through BSC(p). Writing each output
// term as pbar·(1 + pi·u)^{1+rho} and p·(1 + pi·v)^{1+rho} keeps the sum
// as 1 + (small) so that E0 ~ eps stays accurate down to eps ~ 1e-12.
long double e0_binary(long double rho, long double pi, long double p) {
  const long double power = 1.0L + rho;
  if (p == 0.0L) {
    const long double sum = std::pow(1.0L - pi, power) + std::pow(pi, power);
    return -std::log(sum);
  }
  const long double pbar = 1.0L - p;
  const long double s = 1.0L / power;
  const long double log_ratio = std::log(p / pbar);
  const long double u = std::expm1(s * log_ratio);   // (p/pbar)^s - 1
  const long double v = std::expm1(-s * log_ratio);  // (pbar/p)^s - 1
  const long double t0 = pbar * std::expm1(power * std::log1p(pi * u));
  const long double t1 = p * std::expm1(power * std::log1p(pi * v));
  return -std::log1p(t0 + t1);
}

struct HatTerms {
  long double a_factor;  // pbar^s - p^s
  long double b_factor;  // pbar^{rho s} - p^{rho s}
  long double s;
};

HatTerms hat_terms(long double rho, long double p) {
  const long double pbar = 1.0L - p;
  const long double s = 1.0L / (1.0L + rho);
  HatTerms t{};
  t.s = s;
  t.a_factor = std::pow(pbar, s) - std::pow(p, s);
  if (p == 0.0L) {
    t.b_factor = (rho == 0.0L) ? 0.0L : std::pow(pbar, rho * s);
  } else {
    t.b_factor = std::expm1(rho * s * std::log(pbar)) - std::expm1(rho * s * std::log(p));
  }
  return t;
}

}  // namespace

double gallager_e0(double rho, const BernoulliDist& input, const BscChannel& ch) {
  require_rho(rho, 0.0, 1.0, "gallager_e0");
  if (rho == 0.0) return 0.0;
  const long double e0 = e0_binary(rho, input.p1(), ch.crossover());
  return static_cast<double>(e0 < 0.0L ? 0.0L : e0);
}

Optimum gallager_eg(double rate, const BernoulliDist& input, const BscChannel& ch) {
  if (!(rate >= 0.0)) throw std::domain_error("gallager_eg: rate must be nonnegative");
  auto objective = [&](double rho) { return gallager_e0(rho, input, ch) - rho * rate; };
  return maximize_concave(objective, 0.0, 1.0);
}

double e0_hat_alpha(double rho, double a, const BscChannel& ch) {
  require_rho(rho, -0.5, 1.0, "e0_hat_alpha");
  if (!(a > 0.0)) throw std::domain_error("e0_hat_alpha: a must be positive");
  const long double p = ch.crossover();
  if (rho < 0.0 && p == 0.0L) {
    throw std::domain_error("e0_hat_alpha: negative rho requires p > 0");
  }
  const HatTerms t = hat_terms(rho, p);
  return static_cast<double>((1.0L + rho) * a * t.a_factor * t.b_factor);
}

double e0_hat_alpha_slope(double rho, double a, const BscChannel& ch) {
  require_rho(rho, -0.5, 1.0, "e0_hat_alpha_slope");
  const long double p = ch.crossover();
  if (p == 0.0L) {
    throw std::domain_error("e0_hat_alpha_slope: requires p > 0");
  }
  const long double pbar = 1.0L - p;
  const HatTerms t = hat_terms(rho, p);
  const long double lp = std::log(p);
  const long double lpbar = std::log(pbar);
  const long double ds = std::pow(pbar, t.s) * lpbar - std::pow(p, t.s) * lp;
  const long double drs =
      std::pow(pbar, rho * t.s) * lpbar - std::pow(p, rho * t.s) * lp;
  const long double slope =
      t.a_factor * t.b_factor + t.s * (t.a_factor * drs - ds * t.b_factor);
  return static_cast<double>(a * slope);
}

Optimum eg_hat_alpha(double r_alpha, double a, const BscChannel& ch) {
  if (!(r_alpha >= 0.0)) throw std::domain_error("eg_hat_alpha: r_alpha must be nonnegative");
  auto objective = [&](double rho) { return e0_hat_alpha(rho, a, ch) - rho * r_alpha; };
  std::function<double(double)> slope;
  if (ch.crossover() > 0.0) {
    slope = [&](double rho) { return e0_hat_alpha_slope(rho, a, ch) - r_alpha; };
  }
  return maximize_concave(objective, 0.0, 1.0, slope);
}

double r_alpha_max(double a, const BscChannel& ch) {
  if (!(a > 0.0)) throw std::domain_error("r_alpha_max: a must be positive");
  const long double p = ch.crossover();
  if (p == 0.0L) return std::numeric_limits<double>::infinity();
  return static_cast<double>(a * (1.0L - 2.0L * p) * std::log((1.0L - p) / p));
}

double er_hat_alpha(double rho, double a, const BscChannel& ch) {
  require_rho(rho, -0.5, 0.0, "er_hat_alpha");
  if (ch.crossover() == 0.0) {
    throw std::domain_error("er_hat_alpha: resolvability exponents require q > 0");
  }
  return -e0_hat_alpha(rho, a, ch);
}

Optimum er_cap_alpha(double r_mk, double a, const BscChannel& ch) {
  if (!(r_mk >= 0.0)) throw std::domain_error("er_cap_alpha: r_mk must be nonnegative");
  if (ch.crossover() == 0.0) {
    throw std::domain_error("er_cap_alpha: resolvability exponents require q > 0");
  }
  auto objective = [&](double rho) { return er_hat_alpha(rho, a, ch) + rho * r_mk; };
  auto slope = [&](double rho) { return -e0_hat_alpha_slope(rho, a, ch) + r_mk; };
  Optimum m = minimize_convex(objective, -0.5, 0.0, slope);
  if (m.value > 0.0) m = {0.0, 0.0};  // h(0) = 0 is always attainable
  return m;
}

ResolvabilityBound resolvability_divergence_bound(std::uint64_t n, double alpha, double r_mk,
                                                  double a, const BscChannel& ch) {
  if (n == 0) throw std::domain_error("resolvability_divergence_bound: n must be positive");
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::domain_error("resolvability_divergence_bound: requires 0 <= alpha < 1");
  }
  const Optimum er = er_cap_alpha(r_mk, a, ch);
  constexpr double rho = -0.5;
  const double scale = std::pow(static_cast<double>(n), alpha);
  const double value = std::exp(scale * er.value) / -rho;
  return {value, rho, er.value, !(er.value < 0.0)};
}

BlockBound gallager_block_bound(double m, std::uint64_t n, const BernoulliDist& input,
                                const BscChannel& ch, int grid_points) {
  if (!(m >= 1.0)) throw std::domain_error("gallager_block_bound: m must be >= 1");
  if (grid_points < 2) throw std::domain_error("gallager_block_bound: grid too small");
  const double log_m1 = (m > 1.0) ? std::log(m - 1.0) : -std::numeric_limits<double>::infinity();
  BlockBound best{std::numeric_limits<double>::infinity(), 1.0, 0.0, true};
  for (int i = 0; i < grid_points; ++i) {
    const double rho = static_cast<double>(i) / (grid_points - 1);
    const double log_term = (rho == 0.0) ? 0.0 : rho * log_m1;
    const double lv = log_term - static_cast<double>(n) * gallager_e0(rho, input, ch);
    if (lv < best.log_value) {
      best.log_value = lv;
      best.rho = rho;
    }
  }
  best.vacuous = best.log_value >= 0.0;
  best.value = best.vacuous ? 1.0 : std::exp(best.log_value);
  return best;
}

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::E0: return "E0";
    case CurveKind::E0Scaled: return "E0_scaled";
    case CurveKind::E0Hat: return "E0hat";
    case CurveKind::ErHat: return "Er_hat";
  }
  return "unknown";
}

ExponentCurve tabulate_curve(CurveKind kind, std::span<const double> rho_grid,
                             const VpProfile& profile, const BscChannel& ch, std::uint64_t n) {
  for (std::size_t i = 1; i < rho_grid.size(); ++i) {
    if (!(rho_grid[i] > rho_grid[i - 1])) {
      throw std::domain_error("tabulate_curve: rho grid must be strictly increasing");
    }
  }
  // Validate everything up front; nothing may throw inside the parallel loop.
  const bool finite_n = kind == CurveKind::E0 || kind == CurveKind::E0Scaled;
  for (double rho : rho_grid) {
    switch (kind) {
      case CurveKind::E0:
      case CurveKind::E0Scaled: require_rho(rho, 0.0, 1.0, "tabulate_curve"); break;
      case CurveKind::E0Hat: require_rho(rho, -0.5, 1.0, "tabulate_curve"); break;
      case CurveKind::ErHat: require_rho(rho, -0.5, 0.0, "tabulate_curve"); break;
    }
  }
  if (kind == CurveKind::ErHat && ch.crossover() == 0.0) {
    throw std::domain_error("tabulate_curve: Er_hat requires q > 0");
  }
  const BernoulliDist input = finite_n ? vp_input_dist(profile, n) : BernoulliDist(0.0);
  const double a = profile.coeff();
  const double scale =
      finite_n ? std::pow(static_cast<double>(n), 1.0 - profile.expo()) : 1.0;

  ExponentCurve curve{kind, {rho_grid.begin(), rho_grid.end()}, {}, ch.crossover(),
                      profile.coeff(), profile.expo(), finite_n ? n : 0};
  curve.value.assign(rho_grid.size(), 0.0);
  const auto count = static_cast<std::ptrdiff_t>(rho_grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const double rho = rho_grid[static_cast<std::size_t>(i)];
    double v = 0.0;
    switch (kind) {
      case CurveKind::E0: v = gallager_e0(rho, input, ch); break;
      case CurveKind::E0Scaled: v = scale * gallager_e0(rho, input, ch); break;
      case CurveKind::E0Hat: v = e0_hat_alpha(rho, a, ch); break;
      case CurveKind::ErHat: v = er_hat_alpha(rho, a, ch); break;
    }
    curve.value[static_cast<std::size_t>(i)] = v;
  }
  return curve;
}

}  // namespace vpstealth
