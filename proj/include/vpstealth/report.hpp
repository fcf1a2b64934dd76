#pragma once

// JSON and CSV rendering of toolkit results. Every document carries the
// resolved configuration that produced it: a top-level "config" object in
// JSON, '#'-prefixed metadata lines in CSV.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "vpstealth/exponents.hpp"
#include "vpstealth/oracle.hpp"
#include "vpstealth/simulator.hpp"
#include "vpstealth/stealth_region.hpp"

namespace vpstealth::report {

using nlohmann::json;

enum class Units { Nats, Bits };

/// Units are a display conversion only; all computation is in nats.
double in_units(double nats, Units units) noexcept;
Units parse_units(std::string_view text);
std::string to_string(Units units);

/// Shortest decimal text that reads back to the same double; "inf", "-inf"
/// and "nan" for non-finite values.
std::string format_double(double x);

/// A finite double as a JSON number, anything else as its format_double text.
json number(double x);

json to_json(const ExponentCurve& curve, Units units);
json to_json(const RegionReport& region);
json to_json(const RateKeyReport& rates, Units units);
json to_json(const SampledMean& m, Units units);
json to_json(const ProportionEstimate& p);
json to_json(const BlockBound& b);
json to_json(const ResolvabilityBound& b, Units units);
json to_json(const Decomposition& d, Units units);
json to_json(const TrialConfig& cfg);
json to_json(const SimReport& sim, Units units);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// '# config: <compact json>' then the header row and data rows.
std::string render_csv(const json& config, const Table& table);
/// {"config": ..., "result": ...} with a trailing newline.
std::string render_json(const json& config, const json& result);

}  // namespace vpstealth::report
