#pragma once

// Gallager error exponents and their vanishing-power (VP) counterparts.
//
// Ranges of the optimization parameter rho:
//   channel coding   rho in [0, 1]
//   resolvability    rho in [-1/2, 0]
//
// The VP closed form e0_hat_alpha is the n -> infinity limit of
// (n / n^alpha)·E0(rho, P_{X,n}) and holds for alpha < 1 only. For alpha = 1
// the input distribution does not vanish and callers use gallager_e0 directly.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vpstealth/binary_channel.hpp"
#include "vpstealth/optimize.hpp"

namespace vpstealth {

/// E0(rho, P_X) = -ln sum_y { sum_x P_X(x) W(y|x)^{1/(1+rho)} }^{1+rho}.
/// Throws std::domain_error unless rho in [0, 1].
double gallager_e0(double rho, const BernoulliDist& input, const BscChannel& ch);

/// max_{rho in [0,1]} E0(rho) - rho·rate. `value` is the exponent, `arg` the maximizer.
Optimum gallager_eg(double rate, const BernoulliDist& input, const BscChannel& ch);

/// (1+rho)·a·(pbar^s - p^s)·(pbar^{rho s} - p^{rho s}), s = 1/(1+rho).
/// Accepts rho in [-1/2, 1]; the negative half is used by the resolvability
/// exponents and requires p > 0.
double e0_hat_alpha(double rho, double a, const BscChannel& ch);

/// d/drho of e0_hat_alpha.
double e0_hat_alpha_slope(double rho, double a, const BscChannel& ch);

/// max_{rho in [0,1]} e0_hat_alpha(rho) - rho·r_alpha.
Optimum eg_hat_alpha(double r_alpha, double a, const BscChannel& ch);

/// a·(1-2p)·ln(pbar/p); +inf at p = 0, 0 at p = 1/2.
double r_alpha_max(double a, const BscChannel& ch);

/// -e0_hat_alpha(rho) for rho in [-1/2, 0]; nonnegative.
double er_hat_alpha(double rho, double a, const BscChannel& ch);

/// inf_{rho in [-1/2,0]} er_hat_alpha(rho) + rho·r_mk.
/// Zero when r_mk <= a(1-2q)ln(qbar/q), strictly negative above it.
Optimum er_cap_alpha(double r_mk, double a, const BscChannel& ch);

struct ResolvabilityBound {
  double value;     ///< upper bound on E[D(P_{Z^n|C} || P_Z^n)]
  double rho;       ///< the rho at which the bound is evaluated
  double exponent;  ///< er_cap_alpha(r_mk) at the same parameters
  bool vacuous;     ///< true when the exponent is not strictly negative
};

/// e^{n^alpha·E_R} / (-rho) with E_R = er_cap_alpha(r_mk), minimized over
/// rho in [-1/2, 0), i.e. evaluated at rho = -1/2. Flags `vacuous` when
/// r_mk does not exceed the resolvability threshold.
ResolvabilityBound resolvability_divergence_bound(std::uint64_t n, double alpha, double r_mk,
                                                  double a, const BscChannel& ch);

struct BlockBound {
  double log_value;  ///< ln of the bound before capping at 1
  double value;      ///< min(1, bound)
  double rho;
  bool vacuous;      ///< the uncapped bound is >= 1
};

/// Finite-n random-coding bound (M-1)^rho·e^{-n·E0(rho)} minimized over a
/// uniform rho-grid on [0, 1] (grid_points >= 2), evaluated in the log domain.
BlockBound gallager_block_bound(double m, std::uint64_t n, const BernoulliDist& input,
                                const BscChannel& ch, int grid_points = 1001);

enum class CurveKind { E0, E0Scaled, E0Hat, ErHat };

std::string to_string(CurveKind kind);

struct ExponentCurve {
  CurveKind kind;
  std::vector<double> rho;
  std::vector<double> value;
  double crossover;
  double coeff;
  double expo;
  std::uint64_t n;  ///< blocklength for the finite-n kinds, 0 otherwise
};

/// Tabulates one exponent over an increasing rho grid. Grid points are
/// evaluated in parallel; the result does not depend on evaluation order.
/// E0 and E0Scaled use the finite-n input distribution vp_input_dist(profile, n).
ExponentCurve tabulate_curve(CurveKind kind, std::span<const double> rho_grid,
                             const VpProfile& profile, const BscChannel& ch, std::uint64_t n);

}  // namespace vpstealth
