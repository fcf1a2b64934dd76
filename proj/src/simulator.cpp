#include "vpstealth/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vpstealth {

namespace {

// Stream reserved for the shared codebook in fixed-codebook mode; per-trial
// streams are 0..trials-1.
constexpr std::uint64_t kCodebookStream = ~std::uint64_t{0};

void set_bit(std::span<std::uint64_t> row, std::size_t i) {
  row[i / 64] |= std::uint64_t{1} << (i % 64);
}

void flip_bit(std::span<std::uint64_t> row, std::size_t i) {
  row[i / 64] ^= std::uint64_t{1} << (i % 64);
}

// Visits the positions of the successes among n Bernoulli(p) trials.
template <class Visit>
void for_each_success(std::size_t n, double p, Rng& rng, Visit visit) {
  if (p <= 0.0) return;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < n; ++i) visit(i);
    return;
  }
  const double log1m_p = std::log1p(-p);
  std::size_t pos = 0;
  while (true) {
    const std::uint64_t skip = rng.geometric_skip(log1m_p);
    if (skip >= n - pos) return;
    pos += static_cast<std::size_t>(skip);
    visit(pos);
    if (++pos >= n) return;
  }
}

}  // namespace

void fill_bernoulli(std::span<std::uint64_t> row, std::size_t n, double p1, Rng& rng) {
  std::fill(row.begin(), row.end(), std::uint64_t{0});
  for_each_success(n, p1, rng, [&](std::size_t i) { set_bit(row, i); });
}

Codebook generate_codebook(std::size_t n, std::size_t m, std::size_t k,
                           const BernoulliDist& input, Rng& rng) {
  Codebook code(n, m, k);
  for (std::size_t flat = 0; flat < code.size(); ++flat) {
    fill_bernoulli(code.row(flat), n, input.p1(), rng);
  }
  return code;
}

void transmit_inplace(std::span<std::uint64_t> bits, std::size_t n, const BscChannel& ch,
                      Rng& rng) {
  for_each_success(n, ch.crossover(), rng, [&](std::size_t i) { flip_bit(bits, i); });
}

BitString transmit(const BitString& word, const BscChannel& ch, Rng& rng) {
  BitString out = word;
  transmit_inplace(out.blocks(), out.size(), ch, rng);
  return out;
}

std::size_t ml_decode(std::span<const std::uint64_t> y, const Codebook& code, std::size_t key,
                      const BscChannel& ch) {
  if (!(ch.crossover() < 0.5)) {
    throw std::domain_error("ml_decode: unsupported decoder, minimum distance is ML only for p < 1/2");
  }
  if (key >= code.k()) throw std::out_of_range("ml_decode: key out of range");
  if (y.size() != code.stride()) throw std::invalid_argument("ml_decode: length mismatch");
  std::size_t best = 0;
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  for (std::size_t w = 0; w < code.m(); ++w) {
    const std::size_t d = hamming_distance(y, code.word(w, key));
    if (d < best_d) {
      best_d = d;
      best = w;
    }
  }
  return best;
}

void TrialConfig::validate() const {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (m == 0 || k == 0) throw std::invalid_argument("m and k must be at least 1");
}

ProportionEstimate wilson_interval(std::uint64_t events, std::uint64_t trials, double z) {
  if (trials == 0 || events > trials) {
    throw std::invalid_argument("wilson_interval: need 0 <= events <= trials, trials > 0");
  }
  const double nn = static_cast<double>(trials);
  const double x = static_cast<double>(events);
  const double z2 = z * z;
  const double denom = nn + z2;
  const double center = (x + z2 / 2.0) / denom;
  const double half = z / denom * std::sqrt(x * (nn - x) / nn + z2 / 4.0);
  return {events, trials, x / nn, std::max(0.0, center - half), std::min(1.0, center + half),
          half};
}

SimReport run_reliability_trials(const TrialConfig& cfg, Execution exec) {
  cfg.validate();
  if (cfg.m < 2) throw std::invalid_argument("error-rate estimation needs m >= 2");
  const BscChannel& bob = cfg.scenario.bob;
  if (!(bob.crossover() < 0.5)) {
    throw std::domain_error("unsupported decoder: Bob's crossover must be below 1/2");
  }
  const BernoulliDist input = vp_input_dist(cfg.scenario.info, cfg.n);
  const auto n = static_cast<std::size_t>(cfg.n);
  const auto m = static_cast<std::size_t>(cfg.m);
  const auto k = static_cast<std::size_t>(cfg.k);

  std::optional<Codebook> shared;
  if (cfg.fixed_codebook) {
    Rng rng = Rng::for_stream(cfg.seed, kCodebookStream);
    shared = generate_codebook(n, m, k, input, rng);
  }

  SimReport report{cfg};
  report.codebooks_sampled = cfg.fixed_codebook ? 1 : cfg.trials;
  if (cfg.record_trace) report.trace.assign(static_cast<std::size_t>(cfg.trials), 0);

  // A fresh codebook only needs the keyed subcodebook: the other K-1
  // subcodebooks are independent of it and never reach the decoder.
  auto one_trial = [&](std::uint64_t t) -> bool {
    Rng rng = Rng::for_stream(cfg.seed, t);
    const std::size_t key = static_cast<std::size_t>(rng.uniform_index(cfg.k));
    const std::size_t w =
        cfg.uniform_message ? static_cast<std::size_t>(rng.uniform_index(cfg.m)) : 0;
    std::optional<Codebook> fresh;
    const Codebook* code = nullptr;
    std::size_t decode_key = key;
    if (shared) {
      code = &*shared;
    } else {
      fresh = generate_codebook(n, m, 1, input, rng);
      code = &*fresh;
      decode_key = 0;
    }
    const auto sent = code->word(w, decode_key);
    std::vector<std::uint64_t> y(sent.begin(), sent.end());
    transmit_inplace(y, n, bob, rng);
    return ml_decode(y, *code, decode_key, bob) != w;
  };

  std::uint64_t errors = 0;
  const auto count = static_cast<std::int64_t>(cfg.trials);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : errors)
    for (std::int64_t t = 0; t < count; ++t) {
      const bool err = one_trial(static_cast<std::uint64_t>(t));
      errors += err ? 1 : 0;
      if (cfg.record_trace) report.trace[static_cast<std::size_t>(t)] = err ? 1 : 0;
    }
  } else {
    for (std::int64_t t = 0; t < count; ++t) {
      const bool err = one_trial(static_cast<std::uint64_t>(t));
      errors += err ? 1 : 0;
      if (cfg.record_trace) report.trace[static_cast<std::size_t>(t)] = err ? 1 : 0;
    }
  }
  report.error = wilson_interval(errors, cfg.trials);
  report.gallager_bound = gallager_block_bound(static_cast<double>(cfg.m), cfg.n, input, bob);
  return report;
}

namespace {

long double log_add(long double x, long double y) {
  if (x == -std::numeric_limits<long double>::infinity()) return y;
  if (y == -std::numeric_limits<long double>::infinity()) return x;
  const long double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

long double log_iid(std::size_t weight, std::size_t n, double p1) {
  const long double ones = weight == 0 ? 0.0L : static_cast<long double>(weight) * std::log(static_cast<long double>(p1));
  const long double zeros =
      weight == n ? 0.0L
                  : static_cast<long double>(n - weight) * std::log1p(-static_cast<long double>(p1));
  return ones + zeros;
}

}  // namespace

SimReport warren_statistics(const TrialConfig& cfg, Execution exec) {
  cfg.validate();
  const StealthScenario& sc = cfg.scenario;
  const BscChannel& warren = sc.warren;
  const BernoulliDist input = vp_input_dist(sc.info, cfg.n);
  const BernoulliDist obf = sc.obfuscation_input(cfg.n);
  const BernoulliDist z = output_marginal(input, warren);
  const BernoulliDist zo = output_marginal(obf, warren);
  const std::uint64_t mk = cfg.m * cfg.k;
  const double alpha = sc.info.expo();

  WarrenEstimate est;
  try {
    est.term_b = static_cast<double>(cfg.n) * kl_divergence(z, zo);
  } catch (const std::domain_error&) {
    est.term_b = std::numeric_limits<double>::infinity();
  }
  est.r_mk = std::log(static_cast<double>(mk)) / std::pow(static_cast<double>(cfg.n), alpha);
  est.threshold = r_alpha_max(sc.info.coeff(), warren);
  if (alpha < 1.0 && warren.crossover() > 0.0) {
    est.analytic =
        resolvability_divergence_bound(cfg.n, alpha, est.r_mk, sc.info.coeff(), warren);
  }

  SimReport report{cfg};
  report.codebooks_sampled = cfg.trials;

  if (cfg.n <= cfg.exact_cap) {
    const auto ens = sample_codebook_ensemble(static_cast<unsigned>(cfg.n),
                                              static_cast<std::size_t>(mk), input, warren, obf,
                                              static_cast<std::size_t>(cfg.trials), cfg.seed,
                                              exec, cfg.exact_cap);
    est.method = "exact-enumeration";
    est.divergence = ens.divergence_to_obfuscation;
    est.resolvability = ens.divergence;
    report.warren = est;
    return report;
  }

  if (!(warren.crossover() > 0.0)) {
    throw std::domain_error("llr estimate needs a warden crossover above 0");
  }
  // Plug-in log-likelihood ratios: one codebook, one uniformly chosen
  // codeword and one warden observation per trial.
  const auto n = static_cast<std::size_t>(cfg.n);
  const long double lq = std::log(static_cast<long double>(warren.crossover()));
  const long double lqbar = std::log1p(-static_cast<long double>(warren.crossover()));
  const long double log_mk = std::log(static_cast<long double>(mk));
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<long double> llr_obf(trials), llr_iid(trials);

  auto one_trial = [&](std::size_t t) {
    Rng rng = Rng::for_stream(cfg.seed, t);
    const Codebook code = generate_codebook(n, static_cast<std::size_t>(mk), 1, input, rng);
    const auto sent = code.row(static_cast<std::size_t>(rng.uniform_index(mk)));
    std::vector<std::uint64_t> obs(sent.begin(), sent.end());
    transmit_inplace(obs, n, warren, rng);
    long double log_coded = -std::numeric_limits<long double>::infinity();
    for (std::size_t c = 0; c < code.size(); ++c) {
      const auto d = static_cast<long double>(hamming_distance(obs, code.row(c)));
      log_coded = log_add(log_coded, d * lq + (static_cast<long double>(n) - d) * lqbar);
    }
    log_coded -= log_mk;
    const std::size_t weight = hamming_weight(obs);
    llr_obf[t] = log_coded - log_iid(weight, n, zo.p1());
    llr_iid[t] = log_coded - log_iid(weight, n, z.p1());
  };

  if (exec == Execution::Parallel) {
    const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t t = 0; t < count; ++t) one_trial(static_cast<std::size_t>(t));
  } else {
    for (std::size_t t = 0; t < trials; ++t) one_trial(t);
  }
  est.method = "llr-estimate";
  est.divergence = sample_mean(llr_obf);
  est.resolvability = sample_mean(llr_iid);
  report.warren = est;
  return report;
}

}  // namespace vpstealth
