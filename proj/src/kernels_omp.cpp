#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "vpstealth/kernels.hpp"
#include "vpstealth/numeric.hpp"

namespace vpstealth::kernels {

namespace {

// Fixed-block compensated reduction: block sums are computed in parallel,
// then combined in block order. `term(i)` returns the i-th summand; a NaN
// summand marks an infinite result.
template <class Term>
long double blocked_sum(std::size_t count, Term term) {
  const std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<long double> partial(blocks, 0.0L);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(count, lo + kReductionBlock);
    CompensatedSum acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[static_cast<std::size_t>(b)] = acc.value();
  }
  CompensatedSum total;
  for (long double s : partial) total.add(s);
  return total.value();
}

}  // namespace

std::vector<long double> mixture_output(std::span<const std::uint32_t> codewords, unsigned n,
                                        double q) {
  const auto w = distance_weights(n, q);
  const auto size = static_cast<std::ptrdiff_t>(std::size_t{1} << n);
  const long double inv = 1.0L / static_cast<long double>(codewords.size());
  std::vector<long double> out(static_cast<std::size_t>(size));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t z = 0; z < size; ++z) {
    const auto zz = static_cast<std::uint32_t>(z);
    long double acc = 0.0L;
    for (std::uint32_t c : codewords) {
      acc += w[static_cast<unsigned>(std::popcount(zz ^ c))];
    }
    out[static_cast<std::size_t>(z)] = acc * inv;
  }
  return out;
}

std::vector<long double> product_output(double p1, unsigned n) {
  const auto w = distance_weights(n, p1);
  const auto size = static_cast<std::ptrdiff_t>(std::size_t{1} << n);
  std::vector<long double> out(static_cast<std::size_t>(size));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t z = 0; z < size; ++z) {
    out[static_cast<std::size_t>(z)] =
        w[static_cast<unsigned>(std::popcount(static_cast<std::uint64_t>(z)))];
  }
  return out;
}

long double divergence(std::span<const long double> p, std::span<const long double> q) {
  const long double s = blocked_sum(p.size(), [&](std::size_t z) -> long double {
    if (p[z] <= 0.0L) return 0.0L;
    if (q[z] <= 0.0L) return std::numeric_limits<long double>::quiet_NaN();
    return p[z] * std::log(p[z] / q[z]);
  });
  return std::isnan(s) ? std::numeric_limits<long double>::infinity() : s;
}

long double neg_entropy(std::span<const long double> p) {
  return blocked_sum(p.size(), [&](std::size_t z) { return xlogx(p[z]); });
}

long double cross_term(std::span<const long double> p, std::span<const long double> q,
                       std::span<const long double> r) {
  return blocked_sum(p.size(), [&](std::size_t z) -> long double {
    if (q[z] <= 0.0L || r[z] <= 0.0L) return 0.0L;
    return (p[z] - q[z]) * std::log(q[z] / r[z]);
  });
}

long double decode_error_mass(std::span<const std::uint32_t> subcode, unsigned n, double p) {
  const auto w = distance_weights(n, p);
  const std::uint32_t sent = subcode[0];
  return blocked_sum(std::size_t{1} << n, [&](std::size_t y) -> long double {
    const auto yy = static_cast<std::uint32_t>(y);
    const int d0 = std::popcount(yy ^ sent);
    for (std::size_t i = 1; i < subcode.size(); ++i) {
      if (std::popcount(yy ^ subcode[i]) < d0) return w[static_cast<unsigned>(d0)];
    }
    return 0.0L;
  });
}

}  // namespace vpstealth::kernels
