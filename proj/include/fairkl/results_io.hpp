#pragma once

#include <string>
#include <vector>

#include "fairkl/experiments.hpp"

namespace fairkl {

inline constexpr const char* kToolkitVersion = "0.1.0";

// 17 significant digits so doubles survive a text round trip
std::string format_double(double v);
std::string json_escape(const std::string& s);

struct RunConfig {
  SweepSpec spec;
  std::string output;           // path prefix; .json / .csv are appended
  std::string format = "both";  // "json", "csv" or "both"
};

// Strict parse: unknown keys at any level are rejected, types checked.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// The effective configuration (defaults filled in), as the JSON object every
// result document embeds. Key order is fixed so identical configs render to
// identical bytes.
std::string render_config_json(const RunConfig& cfg);

// {"meta":{...},"records":[...],"errors":[...]}, records in (trial, eta) order.
std::string render_result_json(const RunConfig& cfg, const TradeoffCurve& curve);

// Flat mirror of the records array, one line per record, empty cell for null.
std::string render_result_csv(const TradeoffCurve& curve);

// Aggregated text table, one block per method run.
std::string render_comparison_table(const std::vector<MethodRun>& runs);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fairkl
