#pragma once

// Exhaustive-enumeration kernels over all 2^n binary strings (n <= 32).
//
// Two implementations with identical signatures:
//   kernels::        OpenMP, used by the library
//   kernels::serial  straightforward loops, kept as the reference for tests
//                    and benchmarks
//
// The parallel reductions split the index range into fixed-size blocks,
// sum each block with compensation and then combine the block sums in
// order, so results are independent of the number of threads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vpstealth::kernels {

inline constexpr std::size_t kReductionBlock = 4096;

/// P(z) = (1/|C|) sum_c q^{d(z,c)} (1-q)^{n-d(z,c)} for every z.
std::vector<long double> mixture_output(std::span<const std::uint32_t> codewords, unsigned n,
                                        double q);

/// P(z) = prod_i Bern(p1)(z_i) for every z.
std::vector<long double> product_output(double p1, unsigned n);

/// sum_z P ln(P/Q); +inf when P(z) > 0 = Q(z) for some z.
long double divergence(std::span<const long double> p, std::span<const long double> q);

/// sum_z P ln P
long double neg_entropy(std::span<const long double> p);

/// sum_z (P - Q)·ln(Q/R), skipping entries where Q or R vanishes.
long double cross_term(std::span<const long double> p, std::span<const long double> q,
                       std::span<const long double> r);

/// Probability that the minimum-distance decoder (ties to the smallest
/// index) returns a message other than 0 when codeword 0 is sent over BSC(p).
long double decode_error_mass(std::span<const std::uint32_t> subcode, unsigned n, double p);

namespace serial {

std::vector<long double> mixture_output(std::span<const std::uint32_t> codewords, unsigned n,
                                        double q);
std::vector<long double> product_output(double p1, unsigned n);
long double divergence(std::span<const long double> p, std::span<const long double> q);
long double neg_entropy(std::span<const long double> p);
long double cross_term(std::span<const long double> p, std::span<const long double> q,
                       std::span<const long double> r);
long double decode_error_mass(std::span<const std::uint32_t> subcode, unsigned n, double p);

}  // namespace serial

/// (1-p)^n·(p/(1-p))^d tabulated for d = 0..n.
std::vector<long double> distance_weights(unsigned n, long double p);

}  // namespace vpstealth::kernels
