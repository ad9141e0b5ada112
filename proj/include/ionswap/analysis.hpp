#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ionswap/design.hpp"
#include "ionswap/fits.hpp"
#include "ionswap/optimize.hpp"
#include "ionswap/protocol.hpp"

namespace ionswap {

// One optimized run-time: the best parameters found and the unperturbed
// ground-state excitation of ion 1 under them.
struct SweepPoint {
  double t_f = 0;
  OptResult opt;
  double e_ground = NAN;  // E_ex,1(t_f, eta = 0), quanta
  bool flagged = false;
};

struct RuntimeSweep {
  std::vector<SweepPoint> points;
  std::vector<double> t_f_grid() const;
  std::vector<double> e_ground_curve() const;  // NaN where flagged
};

// Per-run-time optimization over the grid with warm-start continuation inside
// fixed-size chunks; chunk boundaries are independent of the thread count so
// results are reproducible under any `jobs`.
RuntimeSweep runtime_sweep(const DesignBoundary& dsn, std::span<const double> t_f_grid,
                           const CostSettings& cs, bool two_param, int jobs,
                           const OptimizeOptions& oo = {});

// Ground-state excitations of both ions after the protocol under a constant
// stray field eta (ions start and end at the perturbed equilibria).
struct GroundPoint {
  double e1 = NAN;
  double e2 = NAN;
  bool flagged = false;
};
GroundPoint ground_excitations(const Protocol& p, double eta, const OdeOptions& ode);

// Phase-averaged final excitation of an initially hot ion (and the mean final
// excitation of the other ion, if requested).
double hot_mean_final(const Protocol& p, double eta, double e_in, int hot_ion,
                      int n_phases, const OdeOptions& ode, double* other_mean = nullptr);

// Excitation over the (t_f, eta) plane using the per-t_f optimized
// parameters. e_in = 0 gives ground-state ions; otherwise `hot_ion` starts
// with energy e_in and values are phase averages.
struct SweepGrid {
  std::vector<double> t_f;
  std::vector<double> eta;
  std::vector<double> e1;  // row-major [t_f][eta], quanta, NaN flagged
  std::vector<double> e2;
  double at1(std::size_t i, std::size_t j) const { return e1[i * eta.size() + j]; }
  double at2(std::size_t i, std::size_t j) const { return e2[i * eta.size() + j]; }
};
SweepGrid robustness_grid(const DesignBoundary& dsn, const RuntimeSweep& sweep,
                          std::span<const double> eta_grid, double e_in, int hot_ion,
                          int n_phases, int jobs, const OdeOptions& ode);

// Swap search: phase-averaged hot-ion energy per optimized run-time, discrete
// minimum, parabolic refinement. No solution when the minimum misses the
// target.
struct CoolingScan {
  std::vector<double> t_f;
  std::vector<double> e_hot;  // quanta, NaN flagged
  int min_index = -1;
  double t_c = NAN;      // refined
  double e_min = NAN;    // at the discrete minimum
  bool found = false;
};
CoolingScan find_cooling_time(const DesignBoundary& dsn, const RuntimeSweep& sweep,
                              double e_in, int hot_ion, int n_phases, int jobs,
                              const OdeOptions& ode, double target = 0.1);

// Final hot-ion energy against its initial energy at a fixed protocol.
struct EnergyScanPoint {
  double e_in = 0;
  double e_final = NAN;
};
std::vector<EnergyScanPoint> initial_energy_scan(const Protocol& p,
                                                 std::span<const double> e_in_grid,
                                                 int hot_ion, int n_phases, int jobs,
                                                 const OdeOptions& ode);

// Stray-field cut through a cooling solution, for the resonance fit.
struct ResonanceCut {
  std::vector<double> eta;
  std::vector<double> e_hot;
  LorentzFit fit;
};
ResonanceCut resonance_cut(const Protocol& p, std::span<const double> eta_grid,
                           double e_in, int hot_ion, int n_phases, int jobs,
                           const OdeOptions& ode, double d_ratio);

double cycles_from_time(const DesignBoundary& dsn, double t);
double time_from_cycles(const DesignBoundary& dsn, double cycles);

// Uniformly spaced inclusive grid; guards against accumulation error so the
// last point lands exactly on `hi`.
std::vector<double> linspace_step(double lo, double hi, double step);

}  // namespace ionswap
