#pragma once

#include <utility>

#include "ionswap/analysis.hpp"
#include "ionswap/design.hpp"
#include "ionswap/dynamics.hpp"
#include "ionswap/protocol.hpp"

namespace ionswap {

// Boundary solve for m1 != m2: waist pinned at (d_in, beta_max), constant
// in-phase frequency, and local curvatures matched between the wells at all
// times (which costs a time-dependent linear term and well-centre shift).
DesignBoundary solve_boundaries_unequal(const PhysicalConstraints& c);

// Mass-weighted Hessian of the full potential at the pair equilibrium.
struct MassWeightedHessian {
  double k11 = 0;
  double k12 = 0;
  double k22 = 0;
};
MassWeightedHessian mass_weighted_hessian(const WellParams& w, double m1, double m2,
                                          const EquilibriumPair& eq);

// Eigenvalues of a symmetric 2x2, ascending: (in-phase, out-of-phase) for a
// curvature-matched pair potential.
std::pair<double, double> symmetric_eigenvalues(double k11, double k12, double k22);

// Instantaneous normal-mode coordinates of an ion state relative to the
// moving well centres; canonical (the transform is symplectic).
struct ModeState {
  double x_minus = 0;
  double x_plus = 0;
  double p_minus = 0;
  double p_plus = 0;
};
ModeState to_mode_coordinates(const PotentialSnapshot& snap, double m1, double m2,
                              const IonState& s);

// Harmonic-level mode energies of a state, with the completed-square shift of
// the driven oscillators included.
struct ModeEnergies {
  double minus = 0;
  double plus = 0;
};
ModeEnergies mode_energies(const PotentialSnapshot& snap, double m1, double m2,
                           const IonState& s);

// Same trap, coolant ion lightened: m2 = m1/ratio, ratio >= 1.
PhysicalConstraints with_mass_ratio(const PhysicalConstraints& base, double ratio);

// Ground-state optimization of the full-dynamics excitation (the stray-field
// response is not defined for unequal masses, so only the unperturbed exact
// cost applies here).
OptResult optimize_unequal(const DesignBoundary& dsn, double t_f, bool two_param,
                           CostSettings cs = {},
                           std::optional<std::pair<double, double>> warm_start = {},
                           const OptimizeOptions& oo = {});

// Full swap search for one mass ratio: design, per-run-time two-parameter
// optimization over a window given in motional cycles, then the hot-ion scan
// (the heavy ion 1 starts hot).
struct MassRatioCooling {
  double ratio = 1;
  DesignBoundary design;
  RuntimeSweep sweep;
  CoolingScan cooling;
  double t_c_cycles = 0;
};
MassRatioCooling cooling_for_ratio(const PhysicalConstraints& base, double ratio,
                                   double cycles_lo, double cycles_hi, double cycles_step,
                                   const CostSettings& cs, double e_in, int n_phases,
                                   int jobs, const OptimizeOptions& oo = {});

}  // namespace ionswap
