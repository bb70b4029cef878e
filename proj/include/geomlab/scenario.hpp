// End-to-end scenario runner: each scenario loads a fixture, drives the
// engines, and produces a report of named checks (pass iff margin >= 0),
// data/ratio series, and free-form notes.  Reports serialize to JSON (stable
// bytes for a fixed config and seed), CSV per series, and an SVG ratio plot.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace geomlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // signed slack; pass == (margin >= 0)
  std::string detail;
};

struct SeriesData {
  std::string name;
  std::string kind;  // "data" or "ratio" (ratio series are plotted)
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

struct RunReport {
  std::string scenario;
  nlohmann::ordered_json config_echo;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<SeriesData> series;
  std::vector<std::string> notes;
  double wall_ms = 0.0;  // measured, deliberately not serialized

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

std::vector<std::string> scenario_names();

// dispatch on config["scenario"]; throws on unknown names (message lists the
// valid ones) and on malformed configs
RunReport run_scenario(const nlohmann::ordered_json& config);

// write the requested formats into outdir; returns the created file paths
std::vector<std::string> emit_report(const RunReport& report,
                                     const std::vector<std::string>& formats,
                                     const std::string& outdir);

}  // namespace geomlab
