#include "ionswap/aux_energy.hpp"

#include <cmath>

#include "ionswap/errors.hpp"
#include "ionswap/units.hpp"

namespace ionswap {

ModeForces mode_forces(const PotentialSnapshot& snap, double m1, double m2) {
  const double r1 = std::sqrt(m1), r2 = std::sqrt(m2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ModeForces f;
  f.plus = -((r2 - r1) * inv_sqrt2 * snap.s_ddot +
             (r2 + r1) * 0.5 * inv_sqrt2 * snap.d_ddot);
  f.minus = -((r2 + r1) * inv_sqrt2 * snap.s_ddot +
              (r2 - r1) * 0.5 * inv_sqrt2 * snap.d_ddot);
  return f;
}

AuxEnergies aux_energies(const Protocol& p, double eta, const OdeOptions& opt) {
  const DesignBoundary& dsn = p.design();
  const PhysicalConstraints& c = dsn.constraints;
  if (eta != 0 && !c.equal_masses()) {
    throw ConfigError("stray-field response is only defined for equal masses");
  }
  // Stray field gamma = eta * m * Wm * d_in shifts both wells by
  // stilde = -eta * d_in; the shift couples to the in-phase mode through the
  // quartic term with strength Delta = 3 beta d^4 stilde / C_C.
  const double stilde = -eta * c.d_in;
  const double sqrt_m_half = std::sqrt(0.5 * c.m1);

  // y = (q+, q+', q-, q-')
  auto rhs = [&](double t, const double* y, double* dydt) {
    const auto snap = p.at(t);
    const ModeForces f = mode_forces(snap, c.m1, c.m2);
    double f_minus = f.minus;
    if (eta != 0) {
      const double delta =
          3.0 * snap.well.beta * std::pow(snap.d, 4) * stilde / units::coulomb_coupling;
      f_minus -= sqrt_m_half * snap.d_ddot * delta;
    }
    dydt[0] = y[1];
    dydt[1] = f.plus - snap.omega_plus_sq * y[0];
    dydt[2] = y[3];
    dydt[3] = f_minus - snap.omega_minus_sq * y[2];
  };

  double y[4] = {0, 0, 0, 0};
  integrate_dp5<4>(rhs, 0.0, p.t_f(), y, opt);

  const auto snap = p.at(p.t_f());
  const ModeForces f = mode_forces(snap, c.m1, c.m2);
  double f_minus = f.minus;
  if (eta != 0) {
    const double delta =
        3.0 * snap.well.beta * std::pow(snap.d, 4) * stilde / units::coulomb_coupling;
    f_minus -= sqrt_m_half * snap.d_ddot * delta;
  }
  const double wp = snap.omega_plus_sq, wm = snap.omega_minus_sq;
  const double qp = y[0] - f.plus / wp;
  const double qm = y[2] - f_minus / wm;
  AuxEnergies out;
  out.stretch = 0.5 * y[1] * y[1] + 0.5 * wp * qp * qp;
  out.com = 0.5 * y[3] * y[3] + 0.5 * wm * qm * qm;
  return out;
}

}  // namespace ionswap
