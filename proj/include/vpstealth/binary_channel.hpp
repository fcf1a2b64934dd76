#pragma once

// Binary probability objects and single-letter information measures.
// Everything is in nats.

#include <cstdint>

namespace vpstealth {

/// Probability mass on {0, 1}, stored as the probability of symbol 1.
class BernoulliDist {
public:
  /// Throws std::domain_error unless 0 <= p1 <= 1.
  explicit BernoulliDist(double p1);

  double p1() const noexcept { return p1_; }
  double p0() const noexcept { return 1.0 - p1_; }
  double operator()(int symbol) const noexcept { return symbol == 0 ? p0() : p1_; }

  friend bool operator==(const BernoulliDist&, const BernoulliDist&) = default;

private:
  double p1_;
};

/// Binary symmetric channel with crossover probability in [0, 1/2].
class BscChannel {
public:
  /// Throws std::domain_error unless 0 <= crossover <= 1/2.
  explicit BscChannel(double crossover);

  double crossover() const noexcept { return p_; }
  double complement() const noexcept { return 1.0 - p_; }
  /// W(y|x).
  double transition(int y, int x) const noexcept { return y == x ? 1.0 - p_ : p_; }

  friend bool operator==(const BscChannel&, const BscChannel&) = default;

private:
  double p_;
};

/// Energy profile coeff·n^expo over blocklength n, used both for the
/// information signal (a, alpha) and the obfuscation signal (b, beta).
class VpProfile {
public:
  /// Throws std::domain_error unless coeff > 0 and 0 <= expo <= 1.
  VpProfile(double coeff, double expo);

  double coeff() const noexcept { return coeff_; }
  double expo() const noexcept { return expo_; }

  /// coeff·n^expo
  double energy(double n) const noexcept;
  /// coeff·n^expo / n, not range-checked.
  double symbol_probability(double n) const noexcept;

  friend bool operator==(const VpProfile&, const VpProfile&) = default;

private:
  double coeff_;
  double expo_;
};

/// D(Bern(q1 + shift) || Bern(q1)) in extended precision; accurate when the
/// shift is tiny. Requires 0 < q1 < 1 and q1 + shift in [0, 1].
long double kl_divergence_shifted(long double q1, long double shift);

/// D(P||Q) in nats. Throws std::domain_error if P is not absolutely
/// continuous with respect to Q.
double kl_divergence(const BernoulliDist& p, const BernoulliDist& q);

double variational_distance(const BernoulliDist& p, const BernoulliDist& q) noexcept;

/// Chi-squared distance sum_x (P(x)-Q(x))^2 / Q(x). Q must have full support.
double chi2_distance(const BernoulliDist& p, const BernoulliDist& q);

/// H2(x) in nats with H2(0) = H2(1) = 0.
double binary_entropy(double x);

/// H2(p + d) - H2(p), accurate for tiny d.
long double binary_entropy_increment(long double p, long double d);

BernoulliDist output_marginal(const BernoulliDist& input, const BscChannel& ch) noexcept;

/// Input distribution with P(1) = coeff·n^expo / n. Throws std::domain_error
/// when that exceeds 1 or n == 0.
BernoulliDist vp_input_dist(const VpProfile& profile, std::uint64_t n);

struct MutualInformation {
  double exact;
  /// First-order expansion (1-2p)·eps·ln((1-p)/p); +inf when p = 0 and eps > 0.
  double taylor;
};

MutualInformation mutual_information_vp(const VpProfile& profile, std::uint64_t n,
                                        const BscChannel& ch);

}  // namespace vpstealth
