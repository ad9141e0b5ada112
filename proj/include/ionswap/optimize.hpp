#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ionswap/design.hpp"
#include "ionswap/ode.hpp"

namespace ionswap {

// Downhill-simplex minimizer. Deterministic: no randomness anywhere, so
// identical inputs give identical outputs.
struct SimplexOptions {
  double cost_tol = 1e-10;   // absolute spread of vertex costs
  double param_tol = 1e-8;   // simplex diameter
  int max_evals = 2000;
  double init_step = 1.0;    // used for coordinates at zero
  double init_frac = 0.1;    // fraction of |x_i| otherwise
  std::vector<double> init_steps;  // per-coordinate offsets; override the rules above
};

struct SimplexResult {
  std::vector<double> x;
  double cost = 0;
  int evals = 0;
  bool converged = false;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& opt = {});

enum class CostKind {
  approx_nonrobust,  // final energy of the driven stretch auxiliary
  exact_nonrobust,   // full-dynamics excitation of ground-state ions
  approx_robust,     // adds the stray-field response of the in-phase auxiliary
  exact_robust,      // full-dynamics excitation summed over eta in {0, eta_design}
};

const char* cost_kind_name(CostKind k);
std::optional<CostKind> cost_kind_from_name(const std::string& name);
bool cost_kind_is_exact(CostKind k);
bool cost_kind_is_robust(CostKind k);

struct CostSettings {
  CostKind kind = CostKind::exact_nonrobust;
  double eta_design = 0.015;   // stray-field level robust costs optimize against
  double penalty = 1e6;        // quanta; returned for unphysical parameter sets
  double param_bound = 1e7;    // |A|, |B| cap
  int validity_samples = 257;
  OdeOptions ode;              // shared by simulations and auxiliary ODEs
};

// Cost in units of the phonon quantum hbar*omega0 of the design. Unphysical
// protocols (mode collapse, quartic overshoot, ion contact) return
// penalty*(1 + violation) instead of throwing.
double evaluate_cost(const DesignBoundary& dsn, double A, double B, double t_f,
                     const CostSettings& cs);

struct OptResult {
  double A = 0;
  double B = 0;
  double cost = 0;  // quanta
  int evals = 0;
  bool two_param = false;
  bool converged = false;
  bool penalized = false;
};

// Nelder-Mead over A (B = 0) or (A, B), warm-startable. The cost landscape
// splits into disjoint basins: neighbouring perfect shortcuts differ by one
// period of the intra-protocol stretch ringing, and their stray-field
// responses differ by orders of magnitude. A lone simplex cannot cross the
// penalty walls between basins, so when the warm-started run stays above
// branch_trigger the optimizer scans A on the B = 0 line, collects every
// physical local minimum, and re-polishes the best few.
struct OptimizeOptions {
  double cost_tol_internal = 1e-10;    // simplex cost spread, internal energy units
  double param_tol = 1e-8;
  int max_evals = 2000;
  double multistart_threshold = 1e-3;  // quanta; stop polishing below this
  double branch_trigger = 0.02;        // quanta; scan only above this
  double branch_lo = -25.0;            // A scan window
  double branch_hi = 25.0;
  double branch_step = 0.5;
  int branch_polish = 3;               // basins to re-polish, best first
  double branch_B_step = 500.0;        // initial simplex extent in B when polishing
};

OptResult optimize_protocol(const DesignBoundary& dsn, double t_f, const CostSettings& cs,
                            bool two_param,
                            std::optional<std::pair<double, double>> warm_start = {},
                            const OptimizeOptions& oo = {});

}  // namespace ionswap
