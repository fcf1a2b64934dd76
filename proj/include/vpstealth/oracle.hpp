#pragma once

// Brute-force ground truth at small blocklengths: exact output
// distributions, divergences, decoding error probabilities, the
// divergence decomposition of a keyed codebook, and codebook-sampled
// expectations built from exact inner computations.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpstealth/binary_channel.hpp"
#include "vpstealth/bitstring.hpp"

namespace vpstealth {

inline constexpr unsigned kDefaultExactCap = 20;

/// Raised when a request would enumerate more than 2^cap strings.
class ExactCapError : public std::length_error {
public:
  ExactCapError(unsigned n, unsigned cap);
  unsigned n() const noexcept { return n_; }
  unsigned cap() const noexcept { return cap_; }

private:
  unsigned n_;
  unsigned cap_;
};

/// Dense distribution over {0,1}^n; entry z holds P(z) with bit i of z = symbol i.
class ExactDist {
public:
  ExactDist(unsigned n, std::vector<long double> probs);

  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return probs_.size(); }
  long double operator[](std::size_t z) const noexcept { return probs_[z]; }
  std::span<const long double> probs() const noexcept { return probs_; }
  long double total() const;

private:
  unsigned n_;
  std::vector<long double> probs_;
};

/// Warden output distribution (1/MK) sum_c W^n(z | c) of a codebook through BSC(q).
ExactDist exact_output_dist(const Codebook& code, const BscChannel& ch,
                            unsigned cap = kDefaultExactCap);

ExactDist exact_iid_dist(const BernoulliDist& marginal, unsigned n,
                         unsigned cap = kDefaultExactCap);

/// D(P||Q) in nats. Throws std::invalid_argument on blocklength mismatch and
/// std::domain_error when P is not absolutely continuous w.r.t. Q.
double exact_divergence(const ExactDist& p, const ExactDist& q);

struct Decomposition {
  double total;   ///< D(P_{Z^n|C} || P_{Zo}^n)
  double term_a;  ///< D(P_{Z^n|C} || P_Z^n)
  double term_b;  ///< n·D(P_{Z,n} || P_{Zo,n})
  double term_c;  ///< sum_z (P_{Z^n|C} - P_Z^n)·ln(P_Z^n / P_{Zo}^n)
  double residual() const noexcept { return total - (term_a + term_b + term_c); }
};

/// Splits the warden's divergence for one codebook. `input` is the
/// distribution the codewords were drawn from (it defines P_Z^n) and
/// `obfuscation` the i.i.d. input the warden expects under the null.
Decomposition decomposition_check(const Codebook& code, const BscChannel& warren,
                                  const BernoulliDist& input, const BernoulliDist& obfuscation,
                                  unsigned cap = kDefaultExactCap);

/// Exact Pr[W_hat != w_0 | w_0 sent] for subcodebook `key` under the
/// minimum-distance decoder with ties to the smallest index. Requires p < 1/2.
double exact_error_probability(const Codebook& code, std::size_t key, const BscChannel& ch,
                               unsigned cap = kDefaultExactCap);

/// (n / n^alpha)·E0(rho, vp_input_dist(profile, n)), the finite-n quantity
/// whose limit is e0_hat_alpha. For alpha = 1 this is E0 itself.
double finite_n_exponent(double rho, const VpProfile& profile, std::uint64_t n,
                         const BscChannel& ch);

struct SampledMean {
  double mean;
  double std_error;
  std::size_t samples;
};

/// Sample mean and its standard error, summed in a fixed order.
SampledMean sample_mean(std::span<const long double> xs);

struct CodebookEnsembleEstimate {
  /// Mean over codebooks of the exact D(P_{Z^n|C} || P_Z^n).
  SampledMean divergence;
  /// n·H2(P_{Z,n}) - mean over codebooks of H(P_{Z^n|C}), i.e. I(C; Z^n).
  SampledMean mutual_information;
  /// Mean over codebooks of the exact D(P_{Z^n|C} || P_{Zo}^n).
  SampledMean divergence_to_obfuscation;
};

enum class Execution { Serial, Parallel };

/// Samples `draws` codebooks of MK words drawn i.i.d. from `input` (codebook
/// i uses stream i of `seed`) and evaluates exact quantities for each.
/// Never an exact expectation over all codebooks.
CodebookEnsembleEstimate sample_codebook_ensemble(unsigned n, std::size_t mk,
                                                  const BernoulliDist& input,
                                                  const BscChannel& warren,
                                                  const BernoulliDist& obfuscation,
                                                  std::size_t draws, std::uint64_t seed,
                                                  Execution exec = Execution::Parallel,
                                                  unsigned cap = kDefaultExactCap);

}  // namespace vpstealth
