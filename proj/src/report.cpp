#include "vpstealth/report.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vpstealth::report {

double in_units(double nats, Units units) noexcept {
  return units == Units::Bits ? nats / std::numbers::ln2 : nats;
}

Units parse_units(std::string_view text) {
  if (text == "nats") return Units::Nats;
  if (text == "bits") return Units::Bits;
  throw std::invalid_argument("units must be nats or bits");
}

std::string to_string(Units units) { return units == Units::Bits ? "bits" : "nats"; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json to_json(const ExponentCurve& curve, Units units) {
  json values = json::array();
  for (double v : curve.value) values.push_back(number(in_units(v, units)));
  json rho = json::array();
  for (double r : curve.rho) rho.push_back(number(r));
  json out{{"kind", to_string(curve.kind)},
           {"crossover", curve.crossover},
           {"coeff", curve.coeff},
           {"expo", curve.expo},
           {"rho", rho},
           {"value", values}};
  if (curve.n != 0) out["n"] = curve.n;
  return out;
}

json to_json(const RegionReport& region) {
  json points = json::array();
  for (const auto& p : region.points) {
    points.push_back({{"beta", p.beta}, {"alpha_max", p.alpha_max}, {"rule", to_string(p.rule)}});
  }
  return {{"q", region.q}, {"delta", region.delta}, {"k", number(region.k)}, {"points", points}};
}

json to_json(const RateKeyReport& r, Units units) {
  return {{"n", r.n},
          {"xi", r.xi},
          {"r_alpha_max_info", number(in_units(r.r_alpha_max_info, units))},
          {"warren_threshold", number(in_units(r.warren_threshold, units))},
          {"log_m_bound", number(in_units(r.log_m_bound, units))},
          {"log_k_bound", number(in_units(r.log_k_bound, units))},
          {"keyless_feasible", r.keyless_feasible}};
}

json to_json(const SampledMean& m, Units units) {
  return {{"mean", number(in_units(m.mean, units))},
          {"std_error", number(in_units(m.std_error, units))},
          {"samples", m.samples}};
}

json to_json(const ProportionEstimate& p) {
  return {{"events", p.events},    {"trials", p.trials},   {"rate", p.rate},
          {"ci_low", p.ci_low},    {"ci_high", p.ci_high}, {"half_width", p.half_width}};
}

json to_json(const BlockBound& b) {
  return {{"value", number(b.value)},
          {"log_value", number(b.log_value)},
          {"rho", b.rho},
          {"vacuous", b.vacuous}};
}

json to_json(const ResolvabilityBound& b, Units units) {
  return {{"value", number(in_units(b.value, units))},
          {"rho", b.rho},
          {"exponent", number(in_units(b.exponent, units))},
          {"vacuous", b.vacuous}};
}

json to_json(const Decomposition& d, Units units) {
  return {{"total", number(in_units(d.total, units))},
          {"term_a", number(in_units(d.term_a, units))},
          {"term_b", number(in_units(d.term_b, units))},
          {"term_c", number(in_units(d.term_c, units))},
          {"residual", number(in_units(d.residual(), units))}};
}

json to_json(const TrialConfig& cfg) {
  return {{"n", cfg.n},
          {"m", cfg.m},
          {"k", cfg.k},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"fixed_codebook", cfg.fixed_codebook},
          {"uniform_message", cfg.uniform_message},
          {"exact_cap", cfg.exact_cap}};
}

json to_json(const SimReport& sim, Units units) {
  json out{{"rng_algorithm", sim.rng_algorithm},
           {"seed", sim.config.seed},
           {"codebooks_sampled", sim.codebooks_sampled}};
  if (sim.error) out["error_rate"] = to_json(*sim.error);
  if (sim.gallager_bound) out["gallager_bound"] = to_json(*sim.gallager_bound);
  if (sim.warren) {
    const WarrenEstimate& w = *sim.warren;
    json wj{{"method", w.method},
            {"divergence", to_json(w.divergence, units)},
            {"resolvability", to_json(w.resolvability, units)},
            {"term_b", number(in_units(w.term_b, units))},
            {"r_mk", number(in_units(w.r_mk, units))},
            {"threshold", number(in_units(w.threshold, units))}};
    if (w.analytic) wj["analytic_bound"] = to_json(*w.analytic, units);
    out["warren"] = wj;
  }
  return out;
}

namespace {

std::string csv_field(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string render_csv(const json& config, const Table& table) {
  std::string out = "# config: " + config.dump() + "\n";
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string render_json(const json& config, const json& result) {
  return json{{"config", config}, {"result", result}}.dump(2) + "\n";
}

}  // namespace vpstealth::report
