#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "ionswap/config.hpp"
#include "ionswap/report.hpp"
#include "ionswap/store.hpp"
#include "ionswap/unequal.hpp"

namespace ionswap::pipelines {

// One batch run: configuration, result cache (after the environment
// override), and the metadata stamped into every emitted file.
struct Context {
  RunConfig cfg;
  ResultStore store;
  Metadata meta;

  explicit Context(RunConfig c);
};

// Stray-field grid symmetric about an exact 0.0 (odd counts hit it).
std::vector<double> symmetric_grid(double max_abs, int n);

nlohmann::json design_json(const DesignBoundary& dsn);

// Dense protocol document: constraints, (A, B, t_f) and sampled potential
// coefficient curves for external plotting.
nlohmann::json protocol_json(const DesignBoundary& dsn, double A, double B, double t_f,
                             int samples);

// Ground-state pair driven through the protocol under stray level eta;
// columns (t, x1, x2, p1, p2, E_ex_1, E_ex_2).
std::string trajectory_csv(const Context& ctx, const Protocol& p, double eta);

// Per-run-time optimization over the grid, backed by the result store: a hit
// replays the stored points byte-for-byte, a miss computes and records them.
RuntimeSweep cached_sweep(const Context& ctx, const DesignBoundary& dsn,
                          std::span<const double> t_f_grid, const CostSettings& cs,
                          bool two_param);

// Subcommand drivers. Each writes its files under cfg.out_dir and returns a
// summary document (also written alongside). Physics failures throw.
nlohmann::json cmd_design(const Context& ctx);
nlohmann::json cmd_optimize(const Context& ctx);
nlohmann::json cmd_sweep(const Context& ctx);
nlohmann::json cmd_cool(const Context& ctx);
nlohmann::json cmd_resonance(const Context& ctx);
nlohmann::json cmd_scale(const Context& ctx);
nlohmann::json cmd_unequal(const Context& ctx);

nlohmann::json run_command(const std::string& name, const RunConfig& cfg);

}  // namespace ionswap::pipelines
