#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ionswap.h"

namespace {

int read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    return IONSWAP_ERR_CONFIG;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shortcut transport protocols for two ions in a dynamic double well"};
  app.fallthrough();

  std::string config_path, out_dir, cache_dir, cost, t_f;
  std::vector<std::string> sets;
  int jobs = 0;
  bool grid = false, trajectory = false, show_version = false;

  app.add_option("-c,--config", config_path, "configuration file (key = value lines)");
  app.add_option("-s,--set", sets, "override a configuration key, KEY=VALUE (repeatable)");
  app.add_option("-j,--jobs", jobs, "parallel workers for grid tasks");
  app.add_option("-o,--out-dir", out_dir, "directory for result files");
  app.add_option("--cache-dir", cache_dir,
                 "result cache directory (env IONSWAP_CACHE_DIR overrides)");
  app.add_option("--cost", cost,
                 "cost kind: approx_nonrobust|exact_nonrobust|approx_robust|exact_robust");
  app.add_option("--t-f", t_f, "run-time for `optimize`, e.g. '30 us'");
  app.add_flag("--grid", grid, "sweep: also emit the full (t_f, eta) grid");
  app.add_flag("--trajectory", trajectory, "optimize: dump the driven ion trajectory CSV");
  app.add_flag("--version", show_version, "print the tool version");

  const char* commands[][2] = {
      {"design", "solve the boundary design and report its numbers"},
      {"optimize", "optimize the free parameters at one run-time"},
      {"sweep", "per-run-time optimization sweep with envelope fit"},
      {"cool", "locate the complete energy-swap run-time"},
      {"resonance", "stray-field cuts and Lorentzian fits at the swap"},
      {"scale", "confinement scaling study over beta_max multipliers"},
      {"unequal", "energy-swap search across mass ratios"},
      {"validate", "run the full acceptance suite (self-contained)"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : IONSWAP_ERR_CONFIG;
  }

  if (show_version) {
    std::cout << ionswap_version() << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return IONSWAP_ERR_CONFIG;
  }
  std::string command = app.get_subcommands().front()->get_name();

  std::string text;
  if (!config_path.empty()) {
    if (int rc = read_file(config_path, text)) return rc;
  }
  std::ostringstream cfg;
  cfg << text << '\n';
  if (jobs > 0) cfg << "jobs = " << jobs << '\n';
  if (!out_dir.empty()) cfg << "out_dir = " << out_dir << '\n';
  if (!cache_dir.empty()) cfg << "cache_dir = " << cache_dir << '\n';
  if (!cost.empty()) cfg << "cost = " << cost << '\n';
  if (!t_f.empty()) cfg << "t_f = " << t_f << '\n';
  if (grid) cfg << "grid = true\n";
  if (trajectory) cfg << "trajectory = true\n";
  for (const std::string& kv : sets) {
    if (kv.find('=') == std::string::npos) {
      std::cerr << "error: --set expects KEY=VALUE, got '" << kv << "'\n";
      return IONSWAP_ERR_CONFIG;
    }
    cfg << kv << '\n';
  }
  std::string config_text = cfg.str();
  bool customized = !config_path.empty() || config_text.find('=') != std::string::npos;

  if (command == "validate") {
    char* report = nullptr;
    int all_passed = 0;
    int rc = ionswap_validate(customized ? config_text.c_str() : nullptr, jobs, &report,
                              &all_passed);
    if (rc != 0) {
      std::cerr << "error: " << ionswap_last_error() << "\n";
      return rc;
    }
    std::cout << report;
    ionswap_string_free(report);
    return all_passed ? 0 : 1;
  }

  ionswap_run* run = nullptr;
  int rc = ionswap_run_new(config_text.c_str(), &run);
  if (rc != 0) {
    std::cerr << "error: " << ionswap_last_error() << "\n";
    return rc;
  }
  char* summary = nullptr;
  rc = ionswap_command(run, command.c_str(), &summary);
  if (rc != 0) {
    std::cerr << "error: " << ionswap_last_error() << "\n";
    ionswap_run_free(run);
    return rc;
  }
  std::cout << summary;
  ionswap_string_free(summary);
  ionswap_run_free(run);
  return 0;
}
