#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ionswap/design.hpp"
#include "ionswap/ode.hpp"
#include "ionswap/protocol.hpp"

namespace ionswap {

// Phase-space state of the pair; ion 1 is the left one (x1 < x2 always).
struct IonState {
  double x1 = 0;
  double x2 = 0;
  double p1 = 0;
  double p2 = 0;
};

struct EquilibriumPair {
  double x1 = 0;
  double x2 = 0;
  double d() const { return x2 - x1; }
  double s() const { return 0.5 * (x1 + x2); }
};

// Per-ion excitation energy relative to the instantaneous equilibrium, with
// the Coulomb term linearized about the equilibrium separation.
struct ExcitationEnergies {
  double ion1 = 0;
  double ion2 = 0;
  double total() const { return ion1 + ion2; }
};

// The potential the ions move in as a function of time. Must be pure.
using WellSchedule = std::function<WellParams(double)>;

// Protocol potential plus a constant stray field. eta is measured relative to
// the in-phase restoring force at the waist: gamma_stray = eta*m*Wm*d_in
// (equal masses; nonzero eta rejected otherwise).
WellSchedule schedule_from_protocol(const Protocol& p, double eta = 0);
double stray_gamma(const DesignBoundary& dsn, double eta);

// Equilibrium positions of V_el(x1) + V_el(x2) + C_C/(x2-x1) by damped
// Newton; optional warm start. Throws NumericsError if no convergence.
EquilibriumPair equilibrium_positions(const WellParams& w);
EquilibriumPair equilibrium_positions(const WellParams& w, const EquilibriumPair& guess);

ExcitationEnergies excitation_energies(const WellParams& w, double m1, double m2,
                                       const IonState& state, const EquilibriumPair& eq);
ExcitationEnergies excitation_energies(const WellParams& w, double m1, double m2,
                                       const IonState& state);

// Local curvature frequencies (incl. the Coulomb stiffening) at the
// equilibria; these match for a symmetric well and stay matched along a
// curvature-matched protocol.
std::pair<double, double> local_frequencies(const WellParams& w, double m1, double m2,
                                            const EquilibriumPair& eq);

// Both ions at rest at the equilibria of `w`, then ion `hot_ion` (1 or 2)
// displaced along its local mode with energy e_in at phase phi:
// delta_x = sqrt(2 e_in/(m w~^2)) sin(phi), p = sqrt(2 m e_in) cos(phi).
IonState prepare_state(const WellParams& w, double m1, double m2, int hot_ion,
                       double e_in, double phi);

// Full classical equations of motion under the schedule, t0 -> t1. Throws
// NumericsError if the ions touch or the integrator fails.
IonState simulate(const WellSchedule& sched, double m1, double m2, IonState s,
                  double t0, double t1, const OdeOptions& opt = OdeOptions{});

// As above, but lands exactly on each time in `times` (ascending, within
// [t0, t1]) and reports the state there.
IonState simulate_sampled(const WellSchedule& sched, double m1, double m2, IonState s,
                          double t0, double t1, std::span<const double> times,
                          const std::function<void(double, const IonState&)>& on_sample,
                          const OdeOptions& opt = OdeOptions{});

// Total mechanical energy (kinetic + potential incl. Coulomb); conserved for
// a frozen schedule.
double total_energy(const WellParams& w, double m1, double m2, const IonState& s);

}  // namespace ionswap
