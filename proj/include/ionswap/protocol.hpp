#pragma once

#include "ionswap/ansatz.hpp"
#include "ionswap/design.hpp"

namespace ionswap {

// Instantaneous protocol data: well separation and centre offset with time
// derivatives, potential coefficients, and the two mode frequencies.
struct PotentialSnapshot {
  double t = 0;
  double d = 0, d_dot = 0, d_ddot = 0;
  double s = 0, s_dot = 0, s_ddot = 0;
  WellParams well;
  double omega_minus_sq = 0;
  double omega_plus_sq = 0;
};

// Stretch-mode frequency and its first two time derivatives, from the ansatz.
struct ModeEvolution {
  double omega_minus_sq = 0;
  double omega_plus_sq = 0;
  double omega_plus_sq_dot = 0;
  double omega_plus_sq_ddot = 0;
};

// rho[k] = d^k rho/dt^k, k = 0..4.
ModeEvolution mode_evolution(const DesignBoundary& design, const double rho[5]);

// Potential reconstruction from the mode frequencies. The equal-mass form
// inverts the symmetric construction directly; the general form implements
// the asymmetric parameter map (nonzero s, gamma). Both return false when the
// mode gap closes (omega_plus^2 <= omega_minus^2) or beta <= 0.
bool reconstruct_equal(const DesignBoundary& design, const ModeEvolution& me,
                       PotentialSnapshot& out);
bool reconstruct_general(const DesignBoundary& design, const ModeEvolution& me,
                         PotentialSnapshot& out);

// A fully specified transport run: design plus ansatz parameters (A, B) and
// run-time t_f. Immutable; evaluation is pure and thread-safe.
class Protocol {
public:
  Protocol(const DesignBoundary& design, double A, double B, double t_f);

  const DesignBoundary& design() const { return design_; }
  double A() const { return ansatz_.A(); }
  double B() const { return ansatz_.B(); }
  double t_f() const { return t_f_; }

  // out[k] = d^k rho_+/dt^k, k = 0..4.
  void rho_plus(double t, double out[5]) const;
  double omega_minus_sq() const;
  double omega_plus_sq(double t) const;

  // False when the reconstruction is unphysical at t.
  bool try_at(double t, PotentialSnapshot& out) const;
  // Throwing variant for contexts where failure is exceptional.
  PotentialSnapshot at(double t) const;

  // Validity scan over `samples` uniform times: largest relative overshoot of
  // beta(t) above beta_max (negative when none) or +inf if the gap closes.
  double beta_overshoot(int samples = 257) const;

private:
  DesignBoundary design_;
  StretchAnsatz ansatz_;
  double t_f_;
};

}  // namespace ionswap
