#pragma once

#include <utility>

#include "ionswap/units.hpp"

namespace ionswap {

// Inputs of a transport design. Internal units (amu, um, us) throughout.
struct PhysicalConstraints {
  double beta_max = 0;  // quartic coefficient at the waist, energy/length^4
  double d0 = 0;        // outer well separation
  double d_in = 0;      // waist separation
  double m1 = 0;        // masses, amu
  double m2 = 0;
  bool equal_masses() const { return m1 == m2; }
};

// Electrical potential V_el(x) = gamma*x + alpha*x^2 + beta*x^4 at one instant.
struct WellParams {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
};

struct ModeFrequencies {
  double omega_minus = 0;  // in-phase (COM-like) mode, rad/time
  double omega_plus = 0;   // out-of-phase (stretch-like) mode
  double omega_local = 0;  // local curvature frequency of each well
};

// Everything fixed by the physical constraints before choosing ansatz
// parameters: potential coefficients at the boundaries and the waist, the
// constant in-phase mode frequency, and the stretch-mode frequencies whose
// ratio sets rho_in_plus.
struct DesignBoundary {
  PhysicalConstraints constraints;
  double d_c = 0;
  WellParams outer;    // t = 0 and t = t_f
  WellParams waist;    // t = t_f/2
  double s_outer = 0;  // well-centre offset; zero for equal masses
  double s_waist = 0;
  double omega_minus = 0;
  double omega0_plus = 0;
  double omega_in_plus = 0;
  double rho_in_plus = 0;
  double omega0 = 0;  // local curvature at t = 0; defines the quantum hbar*omega0
  double exchange_rate = 0;  // exchange rate in the outer configuration
  double exchange_time = 0;

  double quantum() const { return units::hbar * omega0; }
};

// d such that two ions in separate wells at maximal quartic confinement are
// marginally held apart: beta*d^5 = 2*C_C at alpha = 0.
double critical_distance(double beta_max);

// Unique positive root of beta*d^5 + 2*alpha*d^3 = 2*C_C (equilibrium
// separation of the symmetric double well). Newton with bracketing fallback.
double equilibrium_distance(double alpha, double beta);

// Normal modes of two equal-mass ions at the equilibrium of (alpha, beta).
ModeFrequencies normal_modes(double alpha, double beta, double m);

// Resonant energy-exchange rate and time t_e = pi/(2*Omega) for two ions at
// separation d with local frequencies omega1, omega2.
std::pair<double, double> exchange_estimate(double m1, double m2, double omega1,
                                            double omega2, double d);

// Boundary solve; dispatches on m1 == m2. Throws InfeasibleError when the
// constraints admit no double-well design.
DesignBoundary solve_boundaries(const PhysicalConstraints& constraints);

}  // namespace ionswap
