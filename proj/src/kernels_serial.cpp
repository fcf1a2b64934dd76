#include <bit>
#include <cmath>
#include <limits>

#include "vpstealth/kernels.hpp"
#include "vpstealth/numeric.hpp"

namespace vpstealth::kernels {

std::vector<long double> distance_weights(unsigned n, long double p) {
  std::vector<long double> w(n + 1);
  for (unsigned d = 0; d <= n; ++d) {
    w[d] = std::pow(p, static_cast<long double>(d)) *
           std::pow(1.0L - p, static_cast<long double>(n - d));
  }
  return w;
}

namespace serial {

std::vector<long double> mixture_output(std::span<const std::uint32_t> codewords, unsigned n,
                                        double q) {
  const auto w = distance_weights(n, q);
  const std::size_t size = std::size_t{1} << n;
  const long double inv = 1.0L / static_cast<long double>(codewords.size());
  std::vector<long double> out(size);
  for (std::size_t z = 0; z < size; ++z) {
    long double acc = 0.0L;
    for (std::uint32_t c : codewords) {
      acc += w[static_cast<unsigned>(std::popcount(static_cast<std::uint32_t>(z) ^ c))];
    }
    out[z] = acc * inv;
  }
  return out;
}

std::vector<long double> product_output(double p1, unsigned n) {
  const auto w = distance_weights(n, p1);
  const std::size_t size = std::size_t{1} << n;
  std::vector<long double> out(size);
  for (std::size_t z = 0; z < size; ++z) {
    out[z] = w[static_cast<unsigned>(std::popcount(z))];
  }
  return out;
}

long double divergence(std::span<const long double> p, std::span<const long double> q) {
  CompensatedSum acc;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (p[z] <= 0.0L) continue;
    if (q[z] <= 0.0L) return std::numeric_limits<long double>::infinity();
    acc.add(p[z] * std::log(p[z] / q[z]));
  }
  return acc.value();
}

long double neg_entropy(std::span<const long double> p) {
  CompensatedSum acc;
  for (long double x : p) acc.add(xlogx(x));
  return acc.value();
}

long double cross_term(std::span<const long double> p, std::span<const long double> q,
                       std::span<const long double> r) {
  CompensatedSum acc;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (q[z] <= 0.0L || r[z] <= 0.0L) continue;
    acc.add((p[z] - q[z]) * std::log(q[z] / r[z]));
  }
  return acc.value();
}

long double decode_error_mass(std::span<const std::uint32_t> subcode, unsigned n, double p) {
  const auto w = distance_weights(n, p);
  const std::size_t size = std::size_t{1} << n;
  const std::uint32_t sent = subcode[0];
  CompensatedSum acc;
  for (std::size_t y = 0; y < size; ++y) {
    const auto yy = static_cast<std::uint32_t>(y);
    const int d0 = std::popcount(yy ^ sent);
    bool wrong = false;
    for (std::size_t i = 1; i < subcode.size() && !wrong; ++i) {
      wrong = std::popcount(yy ^ subcode[i]) < d0;
    }
    if (wrong) acc.add(w[static_cast<unsigned>(d0)]);
  }
  return acc.value();
}

}  // namespace serial
}  // namespace vpstealth::kernels
