#include "vpstealth/oracle.hpp"

#include <cmath>
#include <limits>

#include "vpstealth/exponents.hpp"
#include "vpstealth/kernels.hpp"
#include "vpstealth/numeric.hpp"
#include "vpstealth/simulator.hpp"

namespace vpstealth {

namespace {

void require_cap(unsigned n, unsigned cap) {
  if (n > cap || n > 30) throw ExactCapError(n, cap);
}

}  // namespace

SampledMean sample_mean(std::span<const long double> xs) {
  if (xs.empty()) throw std::invalid_argument("sample_mean: no samples");
  const auto count = static_cast<long double>(xs.size());
  const long double mean = compensated_sum(xs) / count;
  CompensatedSum sq;
  for (long double x : xs) sq.add((x - mean) * (x - mean));
  const long double var = xs.size() > 1 ? sq.value() / (count - 1.0L) : 0.0L;
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / count)), xs.size()};
}

ExactCapError::ExactCapError(unsigned n, unsigned cap)
    : std::length_error("exact enumeration refused: n = " + std::to_string(n) +
                        " exceeds the exact cap of " + std::to_string(cap) +
                        " (2^n outputs)"),
      n_(n),
      cap_(cap) {}

ExactDist::ExactDist(unsigned n, std::vector<long double> probs) : n_(n), probs_(std::move(probs)) {
  if (probs_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("ExactDist: expected 2^n probabilities");
  }
}

long double ExactDist::total() const { return compensated_sum(probs_); }

ExactDist exact_output_dist(const Codebook& code, const BscChannel& ch, unsigned cap) {
  const auto n = static_cast<unsigned>(code.n());
  require_cap(n, cap);
  const auto masks = code.masks();
  return ExactDist(n, kernels::mixture_output(masks, n, ch.crossover()));
}

ExactDist exact_iid_dist(const BernoulliDist& marginal, unsigned n, unsigned cap) {
  require_cap(n, cap);
  return ExactDist(n, kernels::product_output(marginal.p1(), n));
}

double exact_divergence(const ExactDist& p, const ExactDist& q) {
  if (p.n() != q.n()) throw std::invalid_argument("exact_divergence: blocklength mismatch");
  const long double d = kernels::divergence(p.probs(), q.probs());
  if (std::isinf(d)) {
    throw std::domain_error("exact_divergence: P is not absolutely continuous w.r.t. Q");
  }
  return static_cast<double>(d);
}

Decomposition decomposition_check(const Codebook& code, const BscChannel& warren,
                                  const BernoulliDist& input, const BernoulliDist& obfuscation,
                                  unsigned cap) {
  const auto n = static_cast<unsigned>(code.n());
  require_cap(n, cap);
  const BernoulliDist z = output_marginal(input, warren);
  const BernoulliDist zo = output_marginal(obfuscation, warren);
  const ExactDist coded = exact_output_dist(code, warren, cap);
  const ExactDist iid = exact_iid_dist(z, n, cap);
  const ExactDist null = exact_iid_dist(zo, n, cap);

  Decomposition d{};
  d.total = exact_divergence(coded, null);
  d.term_a = exact_divergence(coded, iid);
  d.term_b = static_cast<double>(n) * kl_divergence(z, zo);
  d.term_c = static_cast<double>(kernels::cross_term(coded.probs(), iid.probs(), null.probs()));
  return d;
}

double exact_error_probability(const Codebook& code, std::size_t key, const BscChannel& ch,
                               unsigned cap) {
  const auto n = static_cast<unsigned>(code.n());
  require_cap(n, cap);
  if (key >= code.k()) throw std::out_of_range("exact_error_probability: key out of range");
  if (!(ch.crossover() < 0.5)) {
    throw std::domain_error("exact_error_probability: minimum-distance decoding needs p < 1/2");
  }
  const auto sub = code.subcode_masks(key);
  return static_cast<double>(kernels::decode_error_mass(sub, n, ch.crossover()));
}

double finite_n_exponent(double rho, const VpProfile& profile, std::uint64_t n,
                         const BscChannel& ch) {
  const BernoulliDist input = vp_input_dist(profile, n);
  const double scale = std::pow(static_cast<double>(n), 1.0 - profile.expo());
  return scale * gallager_e0(rho, input, ch);
}

CodebookEnsembleEstimate sample_codebook_ensemble(unsigned n, std::size_t mk,
                                                  const BernoulliDist& input,
                                                  const BscChannel& warren,
                                                  const BernoulliDist& obfuscation,
                                                  std::size_t draws, std::uint64_t seed,
                                                  Execution exec, unsigned cap) {
  require_cap(n, cap);
  if (draws == 0 || mk == 0) {
    throw std::invalid_argument("sample_codebook_ensemble: draws and MK must be positive");
  }
  const BernoulliDist z = output_marginal(input, warren);
  const BernoulliDist zo = output_marginal(obfuscation, warren);
  const auto iid = kernels::product_output(z.p1(), n);
  const auto null = kernels::product_output(zo.p1(), n);
  const long double output_entropy = -kernels::neg_entropy(iid);

  std::vector<long double> div_a(draws), mi(draws), div_total(draws);
  auto one_draw = [&](std::size_t i) {
    Rng rng = Rng::for_stream(seed, i);
    const Codebook code = generate_codebook(n, mk, 1, input, rng);
    const auto masks = code.masks();
    const auto coded = kernels::serial::mixture_output(masks, n, warren.crossover());
    div_a[i] = kernels::serial::divergence(coded, iid);
    div_total[i] = kernels::serial::divergence(coded, null);
    mi[i] = output_entropy + kernels::serial::neg_entropy(coded);
  };

  if (exec == Execution::Parallel) {
    const auto count = static_cast<std::ptrdiff_t>(draws);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) one_draw(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < draws; ++i) one_draw(i);
  }
  return {sample_mean(div_a), sample_mean(mi), sample_mean(div_total)};
}

}  // namespace vpstealth
