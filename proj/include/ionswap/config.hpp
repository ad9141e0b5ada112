#pragma once

#include <string>
#include <vector>

#include "ionswap/design.hpp"
#include "ionswap/optimize.hpp"

namespace ionswap {

// Batch-run configuration. Every field is plain data in internal units; the
// text form carries explicit unit suffixes and is parsed by parse_config.
struct RunConfig {
  PhysicalConstraints constraints;

  // cost specification
  CostKind cost = CostKind::exact_robust;
  bool two_param = true;
  double eta_design = 0.015;

  // single-protocol run-time (subcommand `optimize`)
  double t_f = 30.0;

  // run-time grid, us
  double t_f_min = 10.0;
  double t_f_max = 60.0;
  double t_f_step = 0.2;

  // run-time grid in trap cycles (scale and unequal studies)
  double cycles_min = 3.0;
  double cycles_max = 16.0;
  double cycles_step = 0.25;

  // stray-field grid, symmetric about zero
  double eta_max = 0.05;
  int eta_points = 41;

  // study grids
  std::vector<double> d_in_ratios = {1.05, 1.10};
  std::vector<double> beta_multipliers = {0.1, 1.0, 10.0, 100.0};
  std::vector<double> mass_ratios = {1.25, 2.0, 5.0, 10.0};

  // energy-swap search
  double e_in = 10.0;  // initial hot-ion energy, quanta of hbar*omega0
  int n_phases = 25;
  int hot_ion = 1;
  double cooling_target = 0.1;  // quanta

  // integrator
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;

  // runtime plumbing (not part of the physics hash)
  int jobs = 1;
  int samples = 2001;
  bool grid = false;        // sweep: also produce the full (t_f, eta) grid
  bool trajectory = false;  // optimize: dump the ion trajectory CSV
  std::string out_dir = "out";
  std::string cache_dir = "";  // empty disables caching

  CostSettings cost_settings() const;
  OdeOptions ode_options() const;

  // Canonical text of the physics-relevant fields; identical physics gives
  // identical strings regardless of output paths or worker count.
  std::string physics_text() const;
  std::string physics_hash() const;  // 16 hex digits
};

// Bundled reference constraints: hardware-limited quartic strength, outer
// separation 5 d_c, inner separation 1.1 d_c, two 40Ca+ ions.
RunConfig default_config();

// Parses `key = value` lines ('#' comments, later keys win). Unknown keys,
// malformed numbers and unknown units throw ConfigError. Lengths accept the
// derived unit d_c, resolved against beta_max from the same text.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

// Round-trip text form with explicit units.
std::string render_config(const RunConfig& cfg);

}  // namespace ionswap
