#pragma once

#include "ionswap/ode.hpp"
#include "ionswap/protocol.hpp"

namespace ionswap {

// Final energies of the driven auxiliary oscillators that measure how far the
// harmonic-level shortcut is from exact. Both start at rest and obey
//   q'' + W(t) q = F(t)
// with W the squared mode frequency and F the inertial force of the moving
// well centres. The energy uses the completed square: a protocol is exact at
// the harmonic level iff both energies vanish at t_f.
struct AuxEnergies {
  double stretch = 0;  // out-of-phase mode, driven by d-ddot (and s-ddot)
  double com = 0;      // in-phase mode; zero for equal masses unless eta != 0
};

// Inertial mode forces of the moving well centres x_1 = s - d/2,
// x_2 = s + d/2 under the mass-weighted normal-mode transform:
//   F_pm = -[ (sqrt(m2) -/+ sqrt(m1))/sqrt(2) * s_ddot
//             + (sqrt(m2) +/- sqrt(m1))/(2 sqrt(2)) * d_ddot ].
// Equal masses: F_plus = -sqrt(m/2) d_ddot, F_minus = 0.
struct ModeForces {
  double plus = 0;
  double minus = 0;
};
ModeForces mode_forces(const PotentialSnapshot& snap, double m1, double m2);

// eta is the stray homogeneous field relative to the in-phase restoring force
// at the waist separation. It enters the in-phase mode as a first-order
// coupling through the quartic term; only eta = 0 is supported for unequal
// masses.
AuxEnergies aux_energies(const Protocol& p, double eta = 0,
                         const OdeOptions& opt = OdeOptions{});

}  // namespace ionswap
