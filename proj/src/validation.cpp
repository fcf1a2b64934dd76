#include "vpstealth/validation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "vpstealth/binary_channel.hpp"
#include "vpstealth/exponents.hpp"
#include "vpstealth/oracle.hpp"
#include "vpstealth/report.hpp"
#include "vpstealth/rng.hpp"
#include "vpstealth/simulator.hpp"
#include "vpstealth/stealth_region.hpp"

namespace vpstealth {

namespace {

using report::format_double;

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome outcome(bool passed, const std::string& label, double value) {
  return {passed, label + "=" + format_double(value)};
}

double rel_err(double x, double ref) { return std::abs(x / ref - 1.0); }

class Battery {
public:
  void run(const std::string& module, const std::string& name,
           const std::function<Outcome()>& body) {
    try {
      Outcome o = body();
      checks_.push_back({module, name, o.passed, std::move(o.detail)});
    } catch (const std::exception& e) {
      checks_.push_back({module, name, false, std::string("threw: ") + e.what()});
    }
  }
  std::vector<Check> take() { return std::move(checks_); }

private:
  std::vector<Check> checks_;
};

void binary_channel_checks(Battery& b, const ValidationProfile& pr) {
  b.run("binary_channel", "pinsker", [&] {
    Rng rng = Rng::for_stream(pr.seed, 1);
    double worst = -1.0;
    for (int i = 0; i < 1000; ++i) {
      const BernoulliDist p(rng.uniform_open0());
      const BernoulliDist q(std::min(rng.uniform_open0(), 0.999999));
      const double v = variational_distance(p, q);
      worst = std::max(worst, v * v - 0.5 * kl_divergence(p, q));
    }
    return outcome(worst <= 1e-15, "max(V^2 - D/2)", worst);
  });
  b.run("binary_channel", "kl_nonnegative_zero_iff_equal", [&] {
    Rng rng = Rng::for_stream(pr.seed, 2);
    double min_d = 1.0;
    double max_self = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const BernoulliDist p(rng.uniform_open0());
      const BernoulliDist q(std::min(rng.uniform_open0(), 0.999999));
      min_d = std::min(min_d, kl_divergence(p, q));
      max_self = std::max(max_self, std::abs(kl_divergence(p, p)));
    }
    return Outcome{min_d >= 0.0 && max_self <= 1e-12,
                   "min D=" + format_double(min_d) + " max D(P||P)=" + format_double(max_self)};
  });
  b.run("binary_channel", "output_marginal_contraction", [&] {
    Rng rng = Rng::for_stream(pr.seed, 3);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const BernoulliDist in(rng.uniform_open0());
      const BscChannel ch(0.5 * rng.uniform_open0());
      const double lhs = std::abs(output_marginal(in, ch).p1() - 0.5);
      const double rhs = (1.0 - 2.0 * ch.crossover()) * std::abs(in.p1() - 0.5);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return outcome(worst <= 1e-15, "max abs error", worst);
  });
  b.run("binary_channel", "mutual_information_taylor_limit", [&] {
    const BscChannel ch(pr.p);
    double prev = 1.0;
    bool monotone = true;
    double last = 0.0;
    for (int e = 1; e <= 8; ++e) {
      const auto mi = mutual_information_vp(VpProfile(std::pow(10.0, -e), 0.0), 1, ch);
      last = rel_err(mi.exact, mi.taylor);
      monotone = monotone && last < prev;
      prev = last;
    }
    return outcome(monotone && last <= 1e-6, "|exact/taylor-1| at eps=1e-8", last);
  });
  b.run("binary_channel", "chi2_of_warden_rows", [&] {
    const BscChannel ch(pr.q);
    const double q = ch.crossover();
    const double chi2 = chi2_distance(BernoulliDist(1.0 - q), BernoulliDist(q));
    const double ref = (1.0 - 2.0 * q) * (1.0 - 2.0 * q) / (q * (1.0 - q));
    return outcome(rel_err(chi2, ref) <= 1e-12, "relative error", rel_err(chi2, ref));
  });
}

void exponent_checks(Battery& b, const ValidationProfile& pr) {
  const BscChannel bob(pr.p);
  const BscChannel warren(pr.q);
  b.run("exponents", "e0_hat_zero_nondecreasing_concave", [&] {
    const int pts = 101;
    std::vector<double> v(pts);
    for (int i = 0; i < pts; ++i) v[i] = e0_hat_alpha(i / 100.0, pr.a, bob);
    double worst_first = 0.0;
    double worst_second = 0.0;
    for (int i = 1; i < pts; ++i) worst_first = std::min(worst_first, v[i] - v[i - 1]);
    for (int i = 1; i + 1 < pts; ++i) {
      worst_second = std::max(worst_second, v[i + 1] - 2.0 * v[i] + v[i - 1]);
    }
    return Outcome{v[0] == 0.0 && worst_first >= -1e-9 && worst_second <= 1e-9,
                   "E(0)=" + format_double(v[0]) + " min diff=" + format_double(worst_first) +
                       " max second diff=" + format_double(worst_second)};
  });
  b.run("exponents", "finite_n_limit_at_1e10", [&] {
    const VpProfile prof(pr.a, pr.alpha);
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double rho = i / 10.0;
      worst = std::max(worst, rel_err(finite_n_exponent(rho, prof, 10'000'000'000ULL, bob),
                                      e0_hat_alpha(rho, pr.a, bob)));
    }
    return outcome(worst <= 1e-3, "max relative error", worst);
  });
  b.run("exponents", "r_alpha_max_is_slope_at_zero", [&] {
    const double h = 1e-5;
    const double fd = (e0_hat_alpha(h, pr.a, bob) - e0_hat_alpha(-h, pr.a, bob)) / (2.0 * h);
    const double err = rel_err(fd, r_alpha_max(pr.a, bob));
    return outcome(err <= 1e-6, "relative error", err);
  });
  b.run("exponents", "eg_hat_positive_iff_below_r_max", [&] {
    const double rmax = r_alpha_max(pr.a, bob);
    bool ok = true;
    for (double f : {0.5, 0.9, 0.99}) ok = ok && eg_hat_alpha(f * rmax, pr.a, bob).value > 0.0;
    for (double f : {1.0, 1.01, 1.5}) ok = ok && eg_hat_alpha(f * rmax, pr.a, bob).value <= 1e-12;
    return Outcome{ok, "r_max=" + format_double(rmax)};
  });
  b.run("exponents", "er_cap_dichotomy", [&] {
    const double thr = r_alpha_max(pr.a, warren);
    double worst_zero = 0.0;
    double max_neg = -1.0;
    for (double f : {0.5, 0.9, 1.0}) {
      worst_zero = std::max(worst_zero, std::abs(er_cap_alpha(f * thr, pr.a, warren).value));
    }
    for (double f : {1.01, 1.5, 2.0}) {
      max_neg = std::max(max_neg, er_cap_alpha(f * thr, pr.a, warren).value);
    }
    return Outcome{worst_zero <= 1e-9 && max_neg < 0.0,
                   "max |E_R| below=" + format_double(worst_zero) +
                       " max E_R above=" + format_double(max_neg)};
  });
  b.run("exponents", "optimizer_first_order_condition", [&] {
    const double r = 0.5 * r_alpha_max(pr.a, bob);
    const Optimum opt = eg_hat_alpha(r, pr.a, bob);
    const double foc = e0_hat_alpha_slope(opt.arg, pr.a, bob) - r;
    const bool interior = opt.arg > 0.0 && opt.arg < 1.0;
    return Outcome{!interior || std::abs(foc) <= 1e-7,
                   "rho*=" + format_double(opt.arg) + " slope-r=" + format_double(foc)};
  });
}

void region_checks(Battery& b, const ValidationProfile& pr) {
  const BscChannel warren(pr.q);
  b.run("stealth_region", "uncoded_quadratic_limit", [&] {
    double worst = 0.0;
    for (double q : {0.05, 0.1, 0.3}) {
      for (int e = 2; e <= 6; ++e) {
        const double eps = std::pow(10.0, -e);
        const StealthScenario sc{VpProfile(eps, 0.0), std::nullopt, BscChannel(pr.p),
                                 BscChannel(q), StealthBudget{}};
        const auto d = uncoded_divergence(sc, 1);
        worst = std::max(worst, rel_err(d.exact, d.quadratic) / (10.0 * eps));
      }
    }
    return outcome(worst <= 1.0, "max |exact/quadratic-1|/(10 eps)", worst);
  });
  b.run("stealth_region", "uncoded_check_monotone_in_a", [&] {
    bool ok = true;
    for (std::uint64_t n : {100ULL, 10'000ULL, 1'000'000ULL}) {
      bool prev = true;
      for (int i = 1; i <= 40; ++i) {
        const StealthScenario sc{VpProfile(0.005 * i, 0.5), std::nullopt, BscChannel(pr.p),
                                 warren, StealthBudget{pr.delta, 2.0 * pr.delta}};
        const bool now = uncoded_stealth_check(sc, n);
        ok = ok && (prev || !now);
        prev = now;
      }
    }
    return Outcome{ok, "a in 0.005..0.2"};
  });
  b.run("stealth_region", "region_staircase", [&] {
    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[i] = i / 100.0;
    const RegionReport r = achievable_region(grid, warren, pr.delta);
    int bad = 0;
    for (const auto& pt : r.points) {
      const double expect = pt.beta <= 0.5 ? 0.5 : pt.beta;
      if (pt.alpha_max != expect) ++bad;
    }
    return Outcome{bad == 0, std::to_string(bad) + " mismatches"};
  });
  b.run("stealth_region", "covert_constant_sqrt_delta", [&] {
    const BscChannel bob(pr.p);
    const double ratio = covert_scaling_constant(bob, warren, 2.0 * pr.delta) /
                         covert_scaling_constant(bob, warren, pr.delta);
    return outcome(rel_err(ratio, std::sqrt(2.0)) <= 1e-12, "ratio", ratio);
  });
  b.run("stealth_region", "rate_key_total_requirement", [&] {
    const StealthScenario sc{VpProfile(pr.a, pr.alpha), std::nullopt, BscChannel(pr.p),
                             warren, StealthBudget{pr.delta, 2.0 * pr.delta}};
    const auto r = rate_key_bounds(sc, 1'000'000, pr.xi);
    const double need =
        std::pow(1e6, pr.alpha) * (1.0 + pr.xi) * r.warren_threshold;
    const bool ok = r.log_k_bound <= 0.0 || r.log_m_bound + r.log_k_bound >= need * (1 - 1e-12);
    return Outcome{ok, "log M+log K=" + format_double(r.log_m_bound + r.log_k_bound) +
                           " need=" + format_double(need)};
  });
  b.run("stealth_region", "k_constant_chi2_form", [&] {
    Rng rng = Rng::for_stream(pr.seed, 4);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const BscChannel ch(0.01 + 0.48 * rng.uniform_open0());
      worst = std::max(worst, rel_err(k_constant(ch, pr.delta), k_constant_chi2(ch, pr.delta)));
    }
    return outcome(worst <= 1e-12, "max relative error", worst);
  });
}

StealthScenario sim_scenario(const ValidationProfile& pr) {
  return {VpProfile(pr.a, pr.alpha), std::nullopt, BscChannel(pr.p), BscChannel(pr.q),
          StealthBudget{pr.delta, 2.0 * pr.delta}};
}

void simulator_checks(Battery& b, const ValidationProfile& pr) {
  b.run("simulator", "noiseless_decoding", [&] {
    Rng rng = Rng::for_stream(pr.seed, 5);
    const Codebook code = generate_codebook(32, 16, 2, BernoulliDist(0.5), rng);
    int failures = 0;
    const BscChannel clean(0.0);
    for (std::size_t v = 0; v < code.k(); ++v) {
      for (std::size_t w = 0; w < code.m(); ++w) {
        bool distinct = true;
        for (std::size_t u = 0; u < w; ++u) {
          distinct = distinct && code.mask(v * code.m() + u) != code.mask(v * code.m() + w);
        }
        std::vector<std::uint64_t> y(code.word(w, v).begin(), code.word(w, v).end());
        transmit_inplace(y, code.n(), clean, rng);
        if (distinct && ml_decode(y, code, v, clean) != w) ++failures;
      }
    }
    return Outcome{failures == 0, std::to_string(failures) + " failures"};
  });
  b.run("simulator", "error_rate_below_gallager_bound", [&] {
    TrialConfig cfg{sim_scenario(pr)};
    cfg.n = 128;
    cfg.m = 8;
    cfg.trials = 2000;
    cfg.seed = pr.seed;
    const SimReport r = run_reliability_trials(cfg);
    const double limit = std::min(1.0, r.gallager_bound->value) + 3.0 * r.error->half_width;
    return Outcome{r.error->rate <= limit,
                   "rate=" + format_double(r.error->rate) + " limit=" + format_double(limit)};
  });
  b.run("simulator", "deterministic_reports", [&] {
    TrialConfig cfg{sim_scenario(pr)};
    cfg.n = 64;
    cfg.m = 4;
    cfg.trials = 500;
    cfg.seed = pr.seed;
    const auto once = report::to_json(run_reliability_trials(cfg), report::Units::Nats).dump();
    const auto twice =
        report::to_json(run_reliability_trials(cfg, Execution::Serial), report::Units::Nats)
            .dump();
    return Outcome{once == twice, "parallel vs serial report"};
  });
}

void oracle_checks(Battery& b, const ValidationProfile& pr) {
  const BscChannel warren(pr.q);
  b.run("oracle", "exact_dist_normalized", [&] {
    Rng rng = Rng::for_stream(pr.seed, 6);
    const Codebook code = generate_codebook(12, 8, 2, BernoulliDist(0.3), rng);
    const double err = std::abs(static_cast<double>(exact_output_dist(code, warren).total()) - 1.0);
    return outcome(err <= 1e-12, "|sum-1|", err);
  });
  b.run("oracle", "tensorization", [&] {
    const BernoulliDist p(0.2), q(0.35);
    const double d = exact_divergence(exact_iid_dist(p, 12), exact_iid_dist(q, 12));
    const double err = std::abs(d - 12.0 * kl_divergence(p, q));
    return outcome(err <= 1e-12, "abs error", err);
  });
  b.run("oracle", "decomposition_identity", [&] {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      Rng rng = Rng::for_stream(pr.seed + 100, i);
      const unsigned n = 6 + static_cast<unsigned>(rng.uniform_index(5));
      const BernoulliDist input(0.05 + 0.4 * rng.uniform_open0());
      const BernoulliDist obf(0.05 + 0.4 * rng.uniform_open0());
      const Codebook code = generate_codebook(n, 4, 2, input, rng);
      worst = std::max(worst, std::abs(decomposition_check(code, warren, input, obf).residual()));
    }
    return outcome(worst <= 1e-12, "max |residual|", worst);
  });
  b.run("oracle", "mutual_information_identity", [&] {
    const BernoulliDist input(0.2);
    const auto est =
        sample_codebook_ensemble(8, 8, input, warren, input, pr.draws, pr.seed, Execution::Parallel);
    const double gap = std::abs(est.divergence.mean - est.mutual_information.mean);
    return Outcome{gap <= 2.0 * est.mutual_information.std_error,
                   "gap=" + format_double(gap) +
                       " 2se=" + format_double(2.0 * est.mutual_information.std_error)};
  });
  b.run("oracle", "exact_error_below_gallager_bound", [&] {
    const BscChannel bob(pr.p);
    const BernoulliDist input(0.5);
    int violations = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      Rng rng = Rng::for_stream(pr.seed + 200, i);
      const unsigned n = 10 + 2 * static_cast<unsigned>(rng.uniform_index(3));
      const std::size_t m = std::size_t{2} << rng.uniform_index(3);
      const Codebook code = generate_codebook(n, m, 1, input, rng);
      const double err = exact_error_probability(code, 0, bob);
      const BlockBound bound = gallager_block_bound(static_cast<double>(m), n, input, bob);
      worst = std::max(worst, err - bound.value);
      if (err > bound.value) ++violations;
    }
    return Outcome{violations == 0, std::to_string(violations) +
                                        " violations, max(err-bound)=" + format_double(worst)};
  });
  b.run("oracle", "resolvability_bound", [&] {
    const double a = 0.5, alpha = 0.75;
    const std::uint64_t n = 10;
    const double thr = r_alpha_max(a, warren);
    const auto mk = static_cast<std::size_t>(std::ceil(std::exp(1.2 * thr * std::pow(10.0, alpha))));
    const double r_mk = std::log(static_cast<double>(mk)) / std::pow(10.0, alpha);
    const BernoulliDist input = vp_input_dist(VpProfile(a, alpha), n);
    const auto est =
        sample_codebook_ensemble(10, mk, input, warren, input, pr.draws, pr.seed, Execution::Parallel);
    const auto bound = resolvability_divergence_bound(n, alpha, r_mk, a, warren);
    return Outcome{bound.vacuous || est.divergence.mean <= bound.value,
                   "E[D]=" + format_double(est.divergence.mean) +
                       " bound=" + format_double(bound.value)};
  });
}

}  // namespace

std::vector<Check> run_validation(const ValidationProfile& profile) {
  Battery b;
  binary_channel_checks(b, profile);
  exponent_checks(b, profile);
  region_checks(b, profile);
  simulator_checks(b, profile);
  oracle_checks(b, profile);
  return b.take();
}

}  // namespace vpstealth
