// command line front end for the scenario runner: load a JSON config, run the
// named scenario, emit reports, exit nonzero when any check fails
#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geomlab/scenario.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geomlab: comparison-geometry scenario runner"};
  std::string scenario, config_path, out_dir = "out", formats = "json,csv,svg";
  std::uint64_t seed = 0;
  app.add_option("scenario", scenario, "scenario name (see --help-scenarios)")->required();
  app.add_option("--config", config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (default: out)");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "override the seed from the config");
  app.add_option("--formats", formats, "comma-separated subset of json,csv,svg");
  CLI11_PARSE(app, argc, argv);

  try {
    const std::vector<std::string> names = geomlab::scenario_names();
    if (std::find(names.begin(), names.end(), scenario) == names.end()) {
      std::string msg = "unknown scenario '" + scenario + "'; valid names:";
      for (const std::string& n : names) msg += " " + n;
      throw std::runtime_error(msg);
    }

    std::ifstream in(config_path);
    nlohmann::ordered_json cfg = nlohmann::ordered_json::parse(in);
    cfg["scenario"] = scenario;
    if (seed_opt->count() > 0) cfg["seed"] = seed;

    const geomlab::RunReport rep = geomlab::run_scenario(cfg);
    const std::vector<std::string> files = geomlab::emit_report(rep, split_csv(formats), out_dir);

    for (const geomlab::CheckResult& c : rep.checks)
      std::printf("[%s] %-28s margin % .3e  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                  c.margin, c.detail.c_str());
    for (const std::string& f : files) std::printf("wrote %s\n", f.c_str());
    std::printf("%s (%.0f ms)\n", rep.all_pass() ? "all checks pass" : "CHECKS FAILED",
                rep.wall_ms);

    if (!rep.all_pass()) {
      std::fprintf(stderr, "failing checks:");
      for (const geomlab::CheckResult& c : rep.checks)
        if (!c.pass) std::fprintf(stderr, " %s", c.name.c_str());
      std::fprintf(stderr, "\n");
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
