#pragma once

// Scalar maximization of concave functions on a closed interval.
//
// A coarse grid brackets the maximizer, golden-section search shrinks the
// bracket, and when a derivative is available the last stretch is done by
// bisection on its sign. Endpoints are returned exactly when the function
// does not turn around inside the interval.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>

namespace vpstealth {

struct Optimum {
  double value;
  double arg;
};

struct ScalarSearchOptions {
  int grid_points = 64;
  double tolerance = 1e-9;
  int max_iterations = 200;
};

namespace detail {

inline Optimum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                  double tol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {f(x), x};
}

}  // namespace detail

/// Maximizes a concave (hence unimodal) f on [lo, hi].
inline Optimum maximize_concave(const std::function<double(double)>& f, double lo, double hi,
                                const std::function<double(double)>& derivative = {},
                                const ScalarSearchOptions& opts = {}) {
  const int pts = std::max(opts.grid_points, 3);
  const double step = (hi - lo) / (pts - 1);
  int best = 0;
  double best_val = f(lo);
  for (int i = 1; i < pts; ++i) {
    const double x = (i == pts - 1) ? hi : lo + i * step;
    const double v = f(x);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }

  double a = lo + std::max(best - 1, 0) * step;
  double b = (best + 1 >= pts - 1) ? hi : lo + (best + 1) * step;

  Optimum opt;
  if (derivative) {
    // Shrink to a modest bracket first, then bisect the derivative sign.
    opt = detail::golden_section_max(f, a, b, std::max(opts.tolerance * 1e3, 1e-7),
                                     opts.max_iterations);
    double left = std::max(a, opt.arg - 1e-6);
    double right = std::min(b, opt.arg + 1e-6);
    if (derivative(left) > 0.0 && derivative(right) < 0.0) {
      for (int i = 0; i < opts.max_iterations && (right - left) > opts.tolerance; ++i) {
        const double mid = 0.5 * (left + right);
        if (derivative(mid) > 0.0) {
          left = mid;
        } else {
          right = mid;
        }
      }
      const double x = 0.5 * (left + right);
      opt = {f(x), x};
    }
  } else {
    opt = detail::golden_section_max(f, a, b, opts.tolerance, opts.max_iterations);
  }

  // Boundary maximizers: keep the endpoint itself when it is at least as good.
  for (double edge : {lo, hi}) {
    const double v = f(edge);
    if (v >= opt.value) opt = {v, edge};
  }
  return opt;
}

/// Minimizes a convex f on [lo, hi].
inline Optimum minimize_convex(const std::function<double(double)>& f, double lo, double hi,
                               const std::function<double(double)>& derivative = {},
                               const ScalarSearchOptions& opts = {}) {
  std::function<double(double)> neg_d;
  if (derivative) neg_d = [&](double x) { return -derivative(x); };
  const Optimum m = maximize_concave([&](double x) { return -f(x); }, lo, hi, neg_d, opts);
  return {-m.value, m.arg};
}

}  // namespace vpstealth
