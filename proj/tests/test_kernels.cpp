#include <omp.h>

#include <cmath>
#include <vector>

#include "doctest.h"
#include "vpstealth/kernels.hpp"
#include "vpstealth/rng.hpp"

using namespace vpstealth;

namespace {

std::vector<std::uint32_t> random_words(std::size_t count, unsigned n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint32_t> out(count);
  for (auto& w : out) w = static_cast<std::uint32_t>(rng.uniform_index(std::uint64_t{1} << n));
  return out;
}

long double rel(long double x, long double y) {
  return std::abs(x - y) / std::max(std::abs(y), 1e-300L);
}

}  // namespace

TEST_CASE("distance weights") {
  const auto w = kernels::distance_weights(3, 0.1L);
  CHECK(static_cast<double>(w[0]) == doctest::Approx(0.729));
  CHECK(static_cast<double>(w[3]) == doctest::Approx(0.001));
}

TEST_CASE("parallel kernels agree with the serial reference") {
  for (unsigned n : {4U, 10U, 14U}) {
    const auto words = random_words(12, n, n);
    const auto mix = kernels::mixture_output(words, n, 0.13);
    const auto mix_ref = kernels::serial::mixture_output(words, n, 0.13);
    CHECK(mix == mix_ref);
    const auto prod = kernels::product_output(0.3, n);
    CHECK(prod == kernels::serial::product_output(0.3, n));

    CHECK(rel(kernels::divergence(mix, prod), kernels::serial::divergence(mix, prod)) < 1e-15L);
    CHECK(rel(kernels::neg_entropy(mix), kernels::serial::neg_entropy(mix)) < 1e-15L);
    const auto other = kernels::product_output(0.2, n);
    CHECK(rel(kernels::cross_term(mix, prod, other), kernels::serial::cross_term(mix, prod, other)) <
          1e-13L);
    CHECK(rel(kernels::decode_error_mass(words, n, 0.1), kernels::serial::decode_error_mass(words, n, 0.1)) <
          1e-15L);
  }
}

TEST_CASE("parallel reductions do not depend on the thread count") {
  const unsigned n = 16;
  const auto words = random_words(20, n, 77);
  const auto mix = kernels::mixture_output(words, n, 0.2);
  const auto prod = kernels::product_output(0.25, n);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const long double d1 = kernels::divergence(mix, prod);
  const long double e1 = kernels::decode_error_mass(words, n, 0.05);
  omp_set_num_threads(4);
  const long double d4 = kernels::divergence(mix, prod);
  const long double e4 = kernels::decode_error_mass(words, n, 0.05);
  omp_set_num_threads(saved);
  CHECK(d1 == d4);
  CHECK(e1 == e4);
}

TEST_CASE("kernel edge cases") {
  const std::vector<long double> p{0.5L, 0.5L, 0.0L, 0.0L};
  const std::vector<long double> q{0.25L, 0.25L, 0.25L, 0.25L};
  const std::vector<long double> r{0.5L, 0.0L, 0.25L, 0.25L};
  CHECK(static_cast<double>(kernels::divergence(p, q)) == doctest::Approx(std::log(2.0)));
  CHECK(std::isinf(kernels::divergence(q, r)));
  CHECK(std::isinf(kernels::serial::divergence(q, r)));
  CHECK(static_cast<double>(kernels::neg_entropy(q)) == doctest::Approx(-std::log(4.0)));
  const std::vector<std::uint32_t> one{5};
  CHECK(kernels::decode_error_mass(one, 3, 0.1) == 0.0L);
  // two complementary words of length 6: ties at distance 3 go to index 0
  const std::vector<std::uint32_t> pair{0b000000, 0b111111};
  const double tail = 15 * 1e-4 * 0.81 + 6 * 1e-5 * 0.9 + 1e-6;
  CHECK(static_cast<double>(kernels::decode_error_mass(pair, 6, 0.1)) == doctest::Approx(tail).epsilon(1e-14));
}
