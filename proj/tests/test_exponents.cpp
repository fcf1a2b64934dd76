#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vpstealth/exponents.hpp"
#include "vpstealth/oracle.hpp"

using namespace vpstealth;

namespace {

// Closed form written out independently of the library, valid for any p in (0,1).
double e0_hat_direct(double rho, double a, double p) {
  const double s = 1.0 / (1.0 + rho);
  const double pb = 1.0 - p;
  return (1.0 + rho) * a * (std::pow(pb, s) - std::pow(p, s)) *
         (std::pow(pb, rho * s) - std::pow(p, rho * s));
}

}  // namespace

TEST_CASE("gallager E0 reference values") {
  const BscChannel ch(0.1);
  const BernoulliDist uniform(0.5);
  CHECK(gallager_e0(0.0, uniform, ch) == 0.0);
  // cutoff rate ln 2 - ln(1 + 2 sqrt(p pbar))
  CHECK(gallager_e0(1.0, uniform, ch) == doctest::Approx(0.2231435513142097558).epsilon(1e-14));
  CHECK_THROWS_AS(gallager_e0(1.5, uniform, ch), std::domain_error);
  CHECK_THROWS_AS(gallager_e0(-0.1, uniform, ch), std::domain_error);
  CHECK(gallager_e0(0.7, BernoulliDist(0.0), ch) == doctest::Approx(0.0).epsilon(1e-18));
}

TEST_CASE("gallager EG optimum") {
  const Optimum eg = gallager_eg(0.1, BernoulliDist(0.5), BscChannel(0.11));
  CHECK(eg.value == doctest::Approx(0.1071597789447).epsilon(1e-11));
  CHECK(eg.arg == doctest::Approx(1.0));
  CHECK_THROWS_AS(gallager_eg(-1.0, BernoulliDist(0.5), BscChannel(0.11)), std::domain_error);
}

TEST_CASE("vp closed form reference values") {
  const BscChannel ch(0.1);
  CHECK(e0_hat_alpha(0.5, 1.0, ch) == doctest::Approx(0.5389751199038806108).epsilon(1e-14));
  CHECK(e0_hat_alpha(1.0, 1.0, ch) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(e0_hat_alpha(0.0, 1.0, ch) == 0.0);
  CHECK(er_hat_alpha(-0.5, 1.0, ch) == doctest::Approx(32.0 / 9.0).epsilon(1e-14));
  CHECK(r_alpha_max(1.0, ch) == doctest::Approx(1.757779661868975506).epsilon(1e-14));
  CHECK(std::isinf(r_alpha_max(1.0, BscChannel(0.0))));
  CHECK(r_alpha_max(1.0, BscChannel(0.5)) == 0.0);
  CHECK_THROWS_AS(e0_hat_alpha(-0.2, 1.0, BscChannel(0.0)), std::domain_error);
  CHECK_THROWS_AS(e0_hat_alpha(1.1, 1.0, ch), std::domain_error);
  CHECK_THROWS_AS(er_hat_alpha(-0.2, 1.0, BscChannel(0.0)), std::domain_error);
}

TEST_CASE("eg_hat reference optimum") {
  const Optimum eg = eg_hat_alpha(1.0, 1.0, BscChannel(0.1));
  CHECK(eg.value == doctest::Approx(0.0811127577).epsilon(1e-9));
  CHECK(eg.arg == doctest::Approx(0.2564).epsilon(1e-3));
}

TEST_CASE("property: closed form matches independent evaluation and p <-> 1-p symmetry") {
  for (double p : {0.01, 0.05, 0.1, 0.25, 0.4}) {
    for (double a : {0.5, 1.0, 2.0}) {
      for (int i = -5; i <= 10; ++i) {
        const double rho = i / 10.0;
        const double v = e0_hat_alpha(rho, a, BscChannel(p));
        CHECK(v == doctest::Approx(e0_hat_direct(rho, a, p)).epsilon(1e-12));
        CHECK(e0_hat_direct(rho, a, 1.0 - p) == doctest::Approx(e0_hat_direct(rho, a, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("property: e0_hat is zero at 0, nondecreasing and concave on [0,1]") {
  for (double p : {0.01, 0.1, 0.3, 0.49}) {
    std::vector<double> v;
    for (int i = 0; i <= 200; ++i) v.push_back(e0_hat_alpha(i / 200.0, 1.3, BscChannel(p)));
    CHECK(v[0] == 0.0);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] - v[i - 1] >= -1e-9);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) CHECK(v[i + 1] - 2 * v[i] + v[i - 1] <= 1e-9);
  }
}

TEST_CASE("property: analytic slope and r_alpha_max") {
  for (double p : {0.05, 0.1, 0.25}) {
    const BscChannel ch(p);
    const double h = 1e-5;
    for (double rho : {0.0, 0.3, 0.8}) {
      const double fd = (e0_hat_alpha(rho + h, 1.0, ch) - e0_hat_alpha(rho - h, 1.0, ch)) / (2 * h);
      CHECK(e0_hat_alpha_slope(rho, 1.0, ch) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(e0_hat_alpha_slope(0.0, 1.0, ch) == doctest::Approx(r_alpha_max(1.0, ch)).epsilon(1e-12));
  }
}

TEST_CASE("property: eg_hat positive exactly below r_alpha_max") {
  for (double p : {0.05, 0.1, 0.3}) {
    const BscChannel ch(p);
    const double rmax = r_alpha_max(0.7, ch);
    for (double f : {0.1, 0.5, 0.9, 0.999}) CHECK(eg_hat_alpha(f * rmax, 0.7, ch).value > 0.0);
    for (double f : {1.0, 1.001, 1.5}) CHECK(eg_hat_alpha(f * rmax, 0.7, ch).value <= 1e-12);
    // interior optimum satisfies the first-order condition
    const Optimum opt = eg_hat_alpha(0.5 * rmax, 0.7, ch);
    if (opt.arg > 0.0 && opt.arg < 1.0) {
      CHECK(e0_hat_alpha_slope(opt.arg, 0.7, ch) == doctest::Approx(0.5 * rmax).epsilon(1e-7));
    }
  }
  // low rate: the optimum sits on the boundary rho = 1
  CHECK(eg_hat_alpha(0.0, 1.0, BscChannel(0.1)).arg == 1.0);
}

TEST_CASE("property: resolvability dichotomy") {
  for (double q : {0.05, 0.1, 0.3}) {
    for (double a : {0.5, 1.0}) {
      const BscChannel ch(q);
      const double thr = r_alpha_max(a, ch);
      for (double f : {0.0, 0.5, 0.9, 1.0}) CHECK(std::abs(er_cap_alpha(f * thr, a, ch).value) <= 1e-9);
      for (double f : {1.01, 1.5, 2.0}) CHECK(er_cap_alpha(f * thr, a, ch).value < 0.0);
      // above the threshold the value is convex-decreasing in r
      const double e1 = er_cap_alpha(1.2 * thr, a, ch).value;
      const double e2 = er_cap_alpha(1.4 * thr, a, ch).value;
      const double e3 = er_cap_alpha(1.6 * thr, a, ch).value;
      CHECK(e2 < e1);
      CHECK(e3 < e2);
      CHECK(e1 + e3 - 2 * e2 <= 1e-12);
    }
  }
}

TEST_CASE("resolvability divergence bound") {
  const BscChannel ch(0.1);
  const double thr = r_alpha_max(1.0, ch);
  const auto at = resolvability_divergence_bound(1000, 0.5, thr, 1.0, ch);
  CHECK(at.value == doctest::Approx(2.0));
  CHECK(at.vacuous);
  CHECK(at.rho == -0.5);
  const auto above = resolvability_divergence_bound(1000, 0.5, 1.5 * thr, 1.0, ch);
  CHECK_FALSE(above.vacuous);
  CHECK(above.value < 2.0);
  const auto farther = resolvability_divergence_bound(4000, 0.5, 1.5 * thr, 1.0, ch);
  CHECK(farther.value < above.value);
  CHECK_THROWS_AS(resolvability_divergence_bound(1000, 1.0, thr, 1.0, ch), std::domain_error);
}

TEST_CASE("finite-n block bound") {
  const BscChannel ch(0.1);
  const BernoulliDist in(0.5);
  const BlockBound b1 = gallager_block_bound(8.0, 20, in, ch);
  const BlockBound b2 = gallager_block_bound(8.0, 40, in, ch);
  CHECK(b2.log_value < b1.log_value);
  CHECK(b1.value <= 1.0);
  const BlockBound big = gallager_block_bound(1e9, 4, in, ch);
  CHECK(big.vacuous);
  CHECK(big.value == 1.0);
  const BlockBound single = gallager_block_bound(1.0, 10, in, ch);
  CHECK(single.value == 0.0);
  // the minimum over the grid is no larger than any single grid point
  for (int i = 0; i <= 10; ++i) {
    const double rho = i / 10.0;
    CHECK(b1.log_value <= rho * std::log(7.0) - 20 * gallager_e0(rho, in, ch) + 1e-12);
  }
}

TEST_CASE("finite-n exponent approaches the closed form") {
  const BscChannel ch(0.1);
  const VpProfile prof(1.0, 0.5);
  CHECK(finite_n_exponent(0.0, prof, 10000, ch) == 0.0);
  const double limit = e0_hat_alpha(0.5, 1.0, ch);
  double prev = 1.0;
  for (std::uint64_t n : {10'000ULL, 1'000'000ULL, 100'000'000ULL, 10'000'000'000ULL}) {
    const double gap = std::abs(finite_n_exponent(0.5, prof, n, ch) / limit - 1.0);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-3);
  // alpha = 1: the scaling is exactly one
  const VpProfile full(0.3, 1.0);
  CHECK(finite_n_exponent(0.4, full, 50, ch) == gallager_e0(0.4, vp_input_dist(full, 50), ch));
}

TEST_CASE("tabulated curves") {
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0};
  const VpProfile prof(1.0, 0.5);
  const BscChannel ch(0.1);
  const auto hat = tabulate_curve(CurveKind::E0Hat, grid, prof, ch, 0);
  REQUIRE(hat.value.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(hat.value[i] == e0_hat_alpha(grid[i], 1.0, ch));
  }
  const auto scaled = tabulate_curve(CurveKind::E0Scaled, grid, prof, ch, 10000);
  CHECK(scaled.value[2] == doctest::Approx(finite_n_exponent(0.5, prof, 10000, ch)));
  CHECK(to_string(CurveKind::ErHat) == "Er_hat");
  const std::vector<double> bad{0.5, 0.25};
  CHECK_THROWS_AS(tabulate_curve(CurveKind::E0Hat, bad, prof, ch, 0), std::domain_error);
  const std::vector<double> neg{-0.5, -0.25, 0.0};
  CHECK_THROWS_AS(tabulate_curve(CurveKind::E0, neg, prof, ch, 100), std::domain_error);
  const auto er = tabulate_curve(CurveKind::ErHat, neg, prof, ch, 0);
  CHECK(er.value[0] == doctest::Approx(32.0 / 9.0));
  const std::vector<double> pos{0.5};
  CHECK_THROWS_AS(tabulate_curve(CurveKind::ErHat, pos, prof, ch, 0), std::domain_error);
}
