#include "vpstealth/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "vpstealth/exponents.hpp"
#include "vpstealth/oracle.hpp"
#include "vpstealth/report.hpp"
#include "vpstealth/simulator.hpp"
#include "vpstealth/stealth_region.hpp"
#include "vpstealth/validation.hpp"

namespace vpstealth::cli {

namespace {

using report::format_double;
using report::json;
using report::Units;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Params {
  double p = 0.1;
  double q = 0.1;
  double a = 1.0;
  double alpha = 0.5;
  std::optional<double> b;
  std::optional<double> beta;
  double delta = kDefaultDelta;
  double theta = kDefaultTheta;
  double xi = kDefaultXi;
  std::uint64_t n = 0;
  std::uint64_t m = 2;
  std::uint64_t k = 1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::uint64_t draws = 200;
  unsigned exact_cap = 0;
  std::string rho_grid = "0:0.1:1";
  std::string beta_grid = "0:0.01:1";
  std::string side = "bob";
  bool fixed_codebook = false;
  bool uniform_message = false;
  bool trace = false;
  std::string output_path;
  std::string format;
  std::string units = "nats";
  std::string config_path;
};

// Grid syntax: "lo:step:hi" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(const std::string& text, const std::string& name) {
  std::vector<double> grid;
  auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError(name + ": cannot parse '" + s + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError(name + ": expected lo:step:hi");
    const double lo = to_double(parts[0]);
    const double step = to_double(parts[1]);
    const double hi = to_double(parts[2]);
    if (!(step > 0.0) || !(hi >= lo)) throw UsageError(name + ": need step > 0 and hi >= lo");
    const auto intervals = static_cast<std::size_t>(std::llround((hi - lo) / step));
    if (std::abs(lo + static_cast<double>(intervals) * step - hi) > 1e-9 * std::max(1.0, std::abs(hi))) {
      throw UsageError(name + ": (hi - lo) is not a multiple of step");
    }
    if (intervals == 0) return {lo};
    for (std::size_t i = 0; i < intervals; ++i) {
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(intervals));
    }
    grid.push_back(hi);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) grid.push_back(to_double(part));
  }
  if (grid.empty()) throw UsageError(name + ": empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw UsageError(name + ": grid must be strictly increasing");
  }
  return grid;
}

std::optional<VpProfile> obfuscation_profile(const Params& ps) {
  if (ps.b.has_value() != ps.beta.has_value()) {
    throw UsageError("--b and --beta must be given together");
  }
  if (!ps.b || *ps.b == 0.0) return std::nullopt;
  return VpProfile(*ps.b, *ps.beta);
}

StealthScenario scenario_of(const Params& ps) {
  return {VpProfile(ps.a, ps.alpha), obfuscation_profile(ps), BscChannel(ps.p), BscChannel(ps.q),
          StealthBudget{ps.delta, ps.theta}};
}

json config_json(const std::string& command, const Params& ps,
                 const std::vector<std::string>& keys) {
  json c{{"command", command}};
  for (const auto& key : keys) {
    if (key == "p") c[key] = ps.p;
    else if (key == "q") c[key] = ps.q;
    else if (key == "a") c[key] = ps.a;
    else if (key == "alpha") c[key] = ps.alpha;
    else if (key == "b") { if (ps.b) c[key] = *ps.b; }
    else if (key == "beta") { if (ps.beta) c[key] = *ps.beta; }
    else if (key == "delta") c[key] = ps.delta;
    else if (key == "theta") c[key] = ps.theta;
    else if (key == "xi") c[key] = ps.xi;
    else if (key == "n") c[key] = ps.n;
    else if (key == "m") c[key] = ps.m;
    else if (key == "k") c[key] = ps.k;
    else if (key == "trials") c[key] = ps.trials;
    else if (key == "seed") c[key] = ps.seed;
    else if (key == "draws") c[key] = ps.draws;
    else if (key == "exact-cap") c[key] = ps.exact_cap;
    else if (key == "rho-grid") c[key] = ps.rho_grid;
    else if (key == "beta-grid") c[key] = ps.beta_grid;
    else if (key == "side") c[key] = ps.side;
    else if (key == "fixed-codebook") c[key] = ps.fixed_codebook;
    else if (key == "uniform-message") c[key] = ps.uniform_message;
    else if (key == "trace") c[key] = ps.trace;
  }
  c["format"] = ps.format;
  c["units"] = ps.units;
  return c;
}

std::string num(double x, Units units) { return format_double(report::in_units(x, units)); }

struct Document {
  json config;
  json result;
  std::optional<report::Table> table;
};

std::string render(const Document& doc, const std::string& format) {
  if (format == "csv") {
    if (!doc.table) throw UsageError("this command has no CSV form");
    return report::render_csv(doc.config, *doc.table);
  }
  return report::render_json(doc.config, doc.result);
}

// Key/value table for the scalar-valued reports.
report::Table flatten(const json& obj) {
  report::Table t{{"key", "value"}, {}};
  std::function<void(const std::string&, const json&)> walk = [&](const std::string& prefix,
                                                                  const json& v) {
    if (v.is_object()) {
      for (const auto& [k, sub] : v.items()) walk(prefix.empty() ? k : prefix + "." + k, sub);
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) walk(prefix + "." + std::to_string(i), v[i]);
    } else if (v.is_string()) {
      t.rows.push_back({prefix, v.get<std::string>()});
    } else if (v.is_number_float()) {
      t.rows.push_back({prefix, format_double(v.get<double>())});
    } else {
      t.rows.push_back({prefix, v.dump()});
    }
  };
  walk("", obj);
  return t;
}

Document cmd_exponents(const Params& ps, Units units) {
  const auto grid = parse_grid(ps.rho_grid, "rho-grid");
  if (grid.front() < -0.5 || grid.back() > 1.0) throw UsageError("rho-grid must lie in [-0.5, 1]");
  const VpProfile profile(ps.a, ps.alpha);
  const BscChannel bob(ps.p);
  const BscChannel warren(ps.q);
  std::vector<double> nonneg, nonpos;
  for (double r : grid) {
    if (r >= 0.0) nonneg.push_back(r);
    if (r <= 0.0) nonpos.push_back(r);
  }

  std::vector<ExponentCurve> curves;
  if (ps.n > 0 && !nonneg.empty()) {
    curves.push_back(tabulate_curve(CurveKind::E0, nonneg, profile, bob, ps.n));
    curves.push_back(tabulate_curve(CurveKind::E0Scaled, nonneg, profile, bob, ps.n));
  }
  const bool vp = ps.alpha < 1.0;
  if (vp) {
    std::vector<double> hat_grid = grid;
    if (ps.p == 0.0) hat_grid = nonneg;
    if (!hat_grid.empty()) curves.push_back(tabulate_curve(CurveKind::E0Hat, hat_grid, profile, bob, 0));
    if (!nonpos.empty() && ps.q > 0.0) {
      curves.push_back(tabulate_curve(CurveKind::ErHat, nonpos, profile, warren, 0));
    }
  } else if (ps.n == 0) {
    throw UsageError("alpha = 1 has no vanishing-power limit; give --n for the finite-n E0 curve");
  }

  const double rmax = r_alpha_max(ps.a, bob);
  json result{{"r_alpha_max", report::number(report::in_units(rmax, units))}, {"curves", json::array()}};
  report::Table table{{"curve", "crossover", "rate", "rho", "value"}, {}};
  for (const auto& c : curves) {
    result["curves"].push_back(report::to_json(c, units));
    for (std::size_t i = 0; i < c.rho.size(); ++i) {
      table.rows.push_back({to_string(c.kind), format_double(c.crossover), "",
                            format_double(c.rho[i]), num(c.value[i], units)});
    }
  }
  if (vp && std::isfinite(rmax)) {
    json eg{{"rate", json::array()}, {"rho", json::array()}, {"value", json::array()}};
    for (int i = 0; i <= 10; ++i) {
      const double rate = rmax * i / 10.0;
      const Optimum opt = eg_hat_alpha(rate, ps.a, bob);
      eg["rate"].push_back(report::number(report::in_units(rate, units)));
      eg["rho"].push_back(opt.arg);
      eg["value"].push_back(report::number(report::in_units(opt.value, units)));
      table.rows.push_back({"EGhat", format_double(ps.p), num(rate, units), format_double(opt.arg),
                            num(opt.value, units)});
    }
    result["eg_hat"] = eg;
  }
  table.rows.push_back({"r_alpha_max", format_double(ps.p), "", "", num(rmax, units)});
  return {{}, result, table};
}

Document cmd_region(const Params& ps) {
  const auto grid = parse_grid(ps.beta_grid, "beta-grid");
  if (grid.front() < 0.0 || grid.back() > 1.0) throw UsageError("beta-grid must lie in [0, 1]");
  if (ps.delta < 0.0) throw UsageError("delta must be >= 0");
  const RegionReport region = achievable_region(grid, BscChannel(ps.q), ps.delta);
  report::Table table{{"beta", "alpha_max", "coeff_rule"}, {}};
  for (const auto& pt : region.points) {
    table.rows.push_back({format_double(pt.beta), format_double(pt.alpha_max), to_string(pt.rule)});
  }
  return {{}, report::to_json(region), table};
}

Document cmd_rates(const Params& ps, Units units, std::ostream& err) {
  if (ps.n == 0) throw UsageError("n must be positive");
  if (ps.xi > 0.1) {
    err << "warning: xi = " << format_double(ps.xi)
        << " is not small; the bounds scale with (1 - xi) and (1 + xi)\n";
  }
  const StealthScenario sc = scenario_of(ps);
  const RateKeyReport rates = rate_key_bounds(sc, ps.n, ps.xi);
  json result = report::to_json(rates, units);
  result["k_constant"] = report::number(k_constant(sc.warren, ps.delta));
  try {
    result["covert_scaling_constant"] =
        report::number(report::in_units(covert_scaling_constant(sc.bob, sc.warren, ps.delta), units));
  } catch (const std::domain_error& e) {
    result["covert_scaling_constant"] = nullptr;
    err << "note: covert scaling constant undefined: " << e.what() << "\n";
  }
  result["uncoded_stealth"] = uncoded_stealth_check(sc, ps.n);
  return {{}, result, flatten(result)};
}

Document cmd_simulate(const Params& ps, Units units) {
  TrialConfig cfg{scenario_of(ps)};
  cfg.n = ps.n;
  cfg.m = ps.m;
  cfg.k = ps.k;
  cfg.trials = ps.trials;
  cfg.seed = ps.seed;
  cfg.fixed_codebook = ps.fixed_codebook;
  cfg.uniform_message = ps.uniform_message;
  cfg.record_trace = ps.trace && ps.side == "bob";
  cfg.exact_cap = ps.exact_cap;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (ps.side == "bob" && cfg.m < 2) throw UsageError("error-rate estimation needs m >= 2");
  const SimReport sim = ps.side == "bob" ? run_reliability_trials(cfg) : warren_statistics(cfg);
  json result = report::to_json(sim, units);
  result["config"] = report::to_json(sim.config);
  std::optional<report::Table> table;
  if (cfg.record_trace) {
    json tr = json::array();
    report::Table t{{"trial", "error"}, {}};
    for (std::size_t i = 0; i < sim.trace.size(); ++i) {
      tr.push_back(sim.trace[i]);
      t.rows.push_back({std::to_string(i), std::to_string(sim.trace[i])});
    }
    result["trace"] = tr;
    table = std::move(t);
  } else {
    table = flatten(result);
  }
  return {{}, result, table};
}

Document cmd_oracle(const Params& ps, Units units) {
  if (ps.n > ps.exact_cap) throw ExactCapError(static_cast<unsigned>(std::min<std::uint64_t>(ps.n, 1000)), ps.exact_cap);
  if (ps.n == 0 || ps.m == 0 || ps.k == 0) throw UsageError("n, m and k must be positive");
  const StealthScenario sc = scenario_of(ps);
  const auto n = static_cast<unsigned>(ps.n);
  const BernoulliDist input = vp_input_dist(sc.info, n);
  const BernoulliDist obf = sc.obfuscation_input(n);
  Rng rng(ps.seed);
  const Codebook code = generate_codebook(n, ps.m, ps.k, input, rng);

  json result{{"n", ps.n}, {"mk", ps.m * ps.k}, {"input_p1", input.p1()}, {"obfuscation_p1", obf.p1()}};
  result["decomposition"] = report::to_json(decomposition_check(code, sc.warren, input, obf, ps.exact_cap), units);
  if (ps.m >= 2 && ps.p < 0.5) {
    const double err = exact_error_probability(code, 0, sc.bob, ps.exact_cap);
    result["error_probability"] = {
        {"exact", err},
        {"gallager_bound", report::to_json(gallager_block_bound(static_cast<double>(ps.m), n, input, sc.bob))}};
  }
  const auto ens = sample_codebook_ensemble(n, ps.m * ps.k, input, sc.warren, obf, ps.draws,
                                            ps.seed, Execution::Parallel, ps.exact_cap);
  json ensemble{{"draws", ps.draws},
                {"divergence", report::to_json(ens.divergence, units)},
                {"mutual_information", report::to_json(ens.mutual_information, units)},
                {"divergence_to_obfuscation", report::to_json(ens.divergence_to_obfuscation, units)}};
  if (ps.alpha < 1.0 && ps.q > 0.0) {
    const double r_mk = std::log(static_cast<double>(ps.m * ps.k)) / std::pow(static_cast<double>(n), ps.alpha);
    ensemble["r_mk"] = report::number(report::in_units(r_mk, units));
    ensemble["resolvability_bound"] =
        report::to_json(resolvability_divergence_bound(n, ps.alpha, r_mk, ps.a, sc.warren), units);
  }
  result["codebook_ensemble"] = ensemble;
  return {{}, result, flatten(result)};
}

Document cmd_validate(const Params& ps, bool& all_passed) {
  ValidationProfile profile;
  profile.p = ps.p;
  profile.q = ps.q;
  profile.a = ps.a;
  profile.alpha = ps.alpha;
  profile.delta = ps.delta;
  profile.xi = ps.xi;
  profile.seed = ps.seed;
  profile.draws = ps.draws;
  const auto checks = run_validation(profile);
  all_passed = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  json rows = json::array();
  report::Table table{{"module", "check", "status", "detail"}, {}};
  for (const auto& c : checks) {
    rows.push_back({{"module", c.module}, {"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    table.rows.push_back({c.module, c.name, c.passed ? "PASS" : "FAIL", c.detail});
  }
  return {{}, {{"all_passed", all_passed}, {"checks", rows}}, table};
}

// Turns a flat JSON config object into "--key=value" tokens.
std::vector<std::string> config_tokens(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      if (value != command) throw UsageError("config file is for command " + value.dump());
      continue;
    }
    std::string text;
    if (value.is_string()) text = value.get<std::string>();
    else if (value.is_boolean()) text = value.get<bool>() ? "true" : "false";
    else if (value.is_number()) text = value.dump();
    else throw UsageError("config key " + key + " must be a scalar");
    tokens.push_back("--" + key + "=" + text);
  }
  return tokens;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;

  // Config-file values go right after the subcommand so that flags given
  // on the command line, which come later, take precedence.
  const auto sub_it = std::find_if(args.begin(), args.end(),
                                   [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (path.empty() || sub_it == args.end()) continue;
    try {
      const auto tokens = config_tokens(path, *sub_it);
      args.insert(sub_it + 1, tokens.begin(), tokens.end());
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    break;
  }

  Params ps;
  CLI::App app{"Stealth communication toolkit for binary symmetric channels with vanishing power"};
  app.name("vpstealth");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ps.config_path, "JSON file of option values; flags override it");
    sub->add_option("--output-path", ps.output_path, "Write here instead of standard output");
    sub->add_option("--format", ps.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--units", ps.units, "nats or bits (display only)")
        ->check(CLI::IsMember({"nats", "bits"}))
        ->capture_default_str();
  };
  auto add_prob = [&](CLI::App* sub, const std::string& name, double& v, const std::string& help) {
    return sub->add_option("--" + name, v, help)->capture_default_str();
  };
  auto add_scenario = [&](CLI::App* sub) {
    add_prob(sub, "p", ps.p, "Bob's crossover probability")->check(CLI::Range(0.0, 0.5));
    add_prob(sub, "q", ps.q, "Warden's crossover probability")->check(CLI::Range(0.0, 0.5));
    add_prob(sub, "a", ps.a, "Information energy coefficient")->check(CLI::PositiveNumber);
    add_prob(sub, "alpha", ps.alpha, "Information energy exponent")->check(CLI::Range(0.0, 1.0));
  };
  auto add_obfuscation = [&](CLI::App* sub) {
    sub->add_option("--b", ps.b, "Obfuscation energy coefficient (omit for the covert case)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--beta", ps.beta, "Obfuscation energy exponent")->check(CLI::Range(0.0, 1.0));
  };
  auto add_budget = [&](CLI::App* sub) {
    add_prob(sub, "delta", ps.delta, "Uncoded divergence budget (defaults to theta/2 when only theta is given)")
        ->check(CLI::NonNegativeNumber);
    add_prob(sub, "theta", ps.theta, "Coded divergence budget")->check(CLI::PositiveNumber);
  };

  CLI::App* exp = app.add_subcommand("exponents", "Exponent curves over a rho grid");
  add_common(exp);
  add_scenario(exp);
  exp->add_option("--rho-grid", ps.rho_grid, "lo:step:hi or comma list within [-0.5, 1]")->capture_default_str();
  exp->add_option("--n", ps.n, "Blocklength for the finite-n E0 curves (0 = omit)")->capture_default_str();

  CLI::App* reg = app.add_subcommand("region", "Achievable (alpha, beta) region");
  add_common(reg);
  add_prob(reg, "q", ps.q, "Warden's crossover probability")->check(CLI::Range(0.0, 0.5));
  add_budget(reg);
  reg->add_option("--beta-grid", ps.beta_grid, "lo:step:hi or comma list within [0, 1]")->capture_default_str();

  CLI::App* rat = app.add_subcommand("rates", "Message and key size bounds");
  add_common(rat);
  add_scenario(rat);
  add_obfuscation(rat);
  add_budget(rat);
  add_prob(rat, "xi", ps.xi, "Slack in the rate bounds")->check(CLI::PositiveNumber);
  ps.n = 1'000'000;
  rat->add_option("--n", ps.n, "Blocklength")->capture_default_str();

  CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo reliability or warden statistics");
  add_common(sim);
  add_scenario(sim);
  add_obfuscation(sim);
  add_budget(sim);
  sim->add_option("--n", ps.n, "Blocklength");
  sim->add_option("--m", ps.m, "Messages per subcodebook")->capture_default_str();
  sim->add_option("--k", ps.k, "Number of keys")->capture_default_str();
  sim->add_option("--trials", ps.trials, "Trials (codebooks for the warden side)")->capture_default_str();
  sim->add_option("--seed", ps.seed, "RNG seed")->capture_default_str();
  sim->add_option("--side", ps.side, "bob (error rate) or warren (detectability)")
      ->check(CLI::IsMember({"bob", "warren"}))
      ->capture_default_str();
  sim->add_flag("--fixed-codebook", ps.fixed_codebook, "One codebook for all trials");
  sim->add_flag("--uniform-message", ps.uniform_message, "Uniform message instead of message 0");
  sim->add_flag("--trace", ps.trace, "Emit per-trial outcomes");
  sim->add_option("--exact-cap", ps.exact_cap, "Largest n enumerated exactly on the warden side");

  CLI::App* ora = app.add_subcommand("oracle", "Exact small-n quantities");
  add_common(ora);
  add_scenario(ora);
  add_obfuscation(ora);
  ora->add_option("--n", ps.n, "Blocklength");
  ora->add_option("--m", ps.m, "Messages per subcodebook")->capture_default_str();
  ora->add_option("--k", ps.k, "Number of keys")->capture_default_str();
  ora->add_option("--seed", ps.seed, "RNG seed")->capture_default_str();
  ora->add_option("--draws", ps.draws, "Codebooks sampled for ensemble averages")->capture_default_str();
  ora->add_option("--exact-cap", ps.exact_cap, "Largest n enumerated exactly");

  CLI::App* val = app.add_subcommand("validate", "Run the invariant battery");
  add_common(val);
  add_scenario(val);
  add_prob(val, "delta", ps.delta, "Uncoded divergence budget")->check(CLI::PositiveNumber);
  add_prob(val, "xi", ps.xi, "Slack in the rate bounds")->check(CLI::PositiveNumber);
  val->add_option("--seed", ps.seed, "RNG seed")->capture_default_str();
  val->add_option("--draws", ps.draws, "Codebooks sampled for ensemble checks")->capture_default_str();

  app.footer(
      "Defaults: delta=0.01 theta=0.02 xi=0.01 seed=0. Simulate: n=256, exact-cap=16. "
      "Oracle: n=10, m=4, k=2, exact-cap=20. Output formats default to csv for exponents, region "
      "and validate and to json otherwise.");

  // The rates default for n was set above only to show it in --help.
  ps.n = 0;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  auto given = [&](const std::string& name) { return chosen->count("--" + name) > 0; };
  if (command == "rates" && !given("n")) ps.n = 1'000'000;
  if (command == "simulate") {
    if (!given("n")) ps.n = 256;
    if (!given("exact-cap")) ps.exact_cap = 16;
  }
  if (command == "oracle") {
    if (!given("n")) ps.n = 10;
    if (!given("m")) ps.m = 4;
    if (!given("k")) ps.k = 2;
    if (!given("exact-cap")) ps.exact_cap = kDefaultExactCap;
  }
  if (chosen->get_option_no_throw("--theta") && given("theta") && !given("delta")) {
    ps.delta = ps.theta / 2.0;
  }
  if (ps.format.empty()) {
    ps.format = (command == "exponents" || command == "region" || command == "validate") ? "csv" : "json";
  }

  try {
    const Units units = report::parse_units(ps.units);
    Document doc;
    bool passed = true;
    std::vector<std::string> keys;
    if (command == "exponents") {
      doc = cmd_exponents(ps, units);
      keys = {"p", "q", "a", "alpha", "rho-grid", "n"};
    } else if (command == "region") {
      doc = cmd_region(ps);
      keys = {"q", "delta", "theta", "beta-grid"};
    } else if (command == "rates") {
      doc = cmd_rates(ps, units, err);
      keys = {"p", "q", "a", "alpha", "b", "beta", "delta", "theta", "xi", "n"};
    } else if (command == "simulate") {
      doc = cmd_simulate(ps, units);
      keys = {"p", "q", "a", "alpha", "b", "beta", "delta", "theta", "n", "m", "k", "trials",
              "seed", "side", "fixed-codebook", "uniform-message", "trace", "exact-cap"};
    } else if (command == "oracle") {
      doc = cmd_oracle(ps, units);
      keys = {"p", "q", "a", "alpha", "b", "beta", "n", "m", "k", "seed", "draws", "exact-cap"};
    } else {
      doc = cmd_validate(ps, passed);
      keys = {"p", "q", "a", "alpha", "delta", "xi", "seed", "draws"};
    }
    doc.config = config_json(command, ps, keys);
    const std::string text = render(doc, ps.format);
    if (ps.output_path.empty()) {
      out << text;
    } else {
      std::ofstream file(ps.output_path, std::ios::binary);
      if (!file) throw UsageError("cannot open output path " + ps.output_path);
      file << text;
    }
    if (!passed) {
      err << "validation failed\n";
      return kExitValidationFailed;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ExactCapError& e) {
    err << "error: " << e.what() << "; raise --exact-cap or lower --n\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace vpstealth::cli
