#include "ionswap/unequal.hpp"

#include <cmath>

#include "ionswap/aux_energy.hpp"
#include "ionswap/errors.hpp"
#include "ionswap/units.hpp"

namespace ionswap {

namespace {

constexpr double kCC = units::coulomb_coupling;

}  // namespace

DesignBoundary solve_boundaries_unequal(const PhysicalConstraints& c) {
  const double mu = std::sqrt(c.m1 * c.m2);
  const double msum = c.m1 + c.m2;
  DesignBoundary b;
  b.constraints = c;
  b.d_c = critical_distance(c.beta_max);
  if (c.d_in < b.d_c * (1.0 - 1e-12)) {
    throw InfeasibleError("d_in below the critical distance: wells merge at the waist");
  }
  if (c.d0 < c.d_in) {
    throw InfeasibleError("d0 must not be smaller than d_in");
  }

  // Invert the parameter map at the waist (d = d_in, beta = beta_max): the
  // map gives the sum of the squared mode frequencies through beta and their
  // difference through the Coulomb coupling.
  const double sum_in =
      8.0 * c.d_in * c.d_in * (c.beta_max + 2.0 * kCC / std::pow(c.d_in, 5)) / msum;
  const double diff_in = 4.0 * kCC / (mu * std::pow(c.d_in, 3));
  const double wm2 = 0.5 * (sum_in - diff_in);
  if (!(wm2 > 0)) throw InfeasibleError("in-phase mode collapsed at the waist");
  const double wp2_in = 0.5 * (sum_in + diff_in);

  // Boundary separation with the same in-phase frequency.
  const double wp2_out = wm2 + 4.0 * kCC / (mu * std::pow(c.d0, 3));
  const double beta_out = msum * (wm2 + wp2_out) / (8.0 * c.d0 * c.d0) -
                          2.0 * kCC / std::pow(c.d0, 5);
  if (!(beta_out > 0)) throw InfeasibleError("boundary quartic term non-positive: d0 too large");

  auto fill_well = [&](double d, double beta, double sum_sq, WellParams& w, double& s) {
    s = (c.m2 - c.m1) * sum_sq / (48.0 * beta * d);
    w.beta = beta;
    w.alpha = kCC / (d * d * d) - 0.5 * beta * d * d - 6.0 * beta * s * s;
    w.gamma = -2.0 * w.alpha * s - 2.0 * beta * (2.0 * s * s * s + 1.5 * d * d * s);
  };
  fill_well(c.d0, beta_out, wm2 + wp2_out, b.outer, b.s_outer);
  fill_well(c.d_in, c.beta_max, sum_in, b.waist, b.s_waist);

  b.omega_minus = std::sqrt(wm2);
  b.omega0_plus = std::sqrt(wp2_out);
  b.omega_in_plus = std::sqrt(wp2_in);
  b.rho_in_plus = std::sqrt(b.omega0_plus / b.omega_in_plus);
  b.omega0 = std::sqrt(0.5 * (wm2 + wp2_out));
  auto [rate, te] = exchange_estimate(c.m1, c.m2, b.omega0, b.omega0, c.d0);
  b.exchange_rate = rate;
  b.exchange_time = te;
  return b;
}

MassWeightedHessian mass_weighted_hessian(const WellParams& w, double m1, double m2,
                                          const EquilibriumPair& eq) {
  const double d = eq.d();
  const double jc = 2.0 * kCC / (d * d * d);
  MassWeightedHessian k;
  k.k11 = (2.0 * w.alpha + 12.0 * w.beta * eq.x1 * eq.x1 + jc) / m1;
  k.k22 = (2.0 * w.alpha + 12.0 * w.beta * eq.x2 * eq.x2 + jc) / m2;
  k.k12 = -jc / std::sqrt(m1 * m2);
  return k;
}

std::pair<double, double> symmetric_eigenvalues(double k11, double k12, double k22) {
  const double mid = 0.5 * (k11 + k22);
  const double rad = std::hypot(0.5 * (k11 - k22), k12);
  return {mid - rad, mid + rad};
}

ModeState to_mode_coordinates(const PotentialSnapshot& snap, double m1, double m2,
                              const IonState& s) {
  const double r1 = std::sqrt(m1), r2 = std::sqrt(m2);
  const double is2 = 1.0 / std::sqrt(2.0);
  const double dx1 = s.x1 - (snap.s - 0.5 * snap.d);
  const double dx2 = s.x2 - (snap.s + 0.5 * snap.d);
  const double v1 = snap.s_dot - 0.5 * snap.d_dot;  // well-centre velocities
  const double v2 = snap.s_dot + 0.5 * snap.d_dot;
  ModeState m;
  m.x_minus = is2 * (r1 * dx1 + r2 * dx2);
  m.x_plus = is2 * (-r1 * dx1 + r2 * dx2);
  m.p_minus = is2 * (s.p1 / r1 + s.p2 / r2) - is2 * (r1 * v1 + r2 * v2);
  m.p_plus = is2 * (-s.p1 / r1 + s.p2 / r2) - is2 * (-r1 * v1 + r2 * v2);
  return m;
}

ModeEnergies mode_energies(const PotentialSnapshot& snap, double m1, double m2,
                           const IonState& s) {
  const ModeState m = to_mode_coordinates(snap, m1, m2, s);
  const ModeForces f = mode_forces(snap, m1, m2);
  const double xm = m.x_minus - f.minus / snap.omega_minus_sq;
  const double xp = m.x_plus - f.plus / snap.omega_plus_sq;
  ModeEnergies e;
  e.minus = 0.5 * m.p_minus * m.p_minus + 0.5 * snap.omega_minus_sq * xm * xm;
  e.plus = 0.5 * m.p_plus * m.p_plus + 0.5 * snap.omega_plus_sq * xp * xp;
  return e;
}

PhysicalConstraints with_mass_ratio(const PhysicalConstraints& base, double ratio) {
  if (!(ratio >= 1.0)) throw ConfigError("mass ratio must be >= 1 (ion 1 is the heavy one)");
  PhysicalConstraints c = base;
  c.m2 = base.m1 / ratio;
  return c;
}

OptResult optimize_unequal(const DesignBoundary& dsn, double t_f, bool two_param,
                           CostSettings cs,
                           std::optional<std::pair<double, double>> warm_start,
                           const OptimizeOptions& oo) {
  cs.kind = CostKind::exact_nonrobust;
  return optimize_protocol(dsn, t_f, cs, two_param, warm_start, oo);
}

MassRatioCooling cooling_for_ratio(const PhysicalConstraints& base, double ratio,
                                   double cycles_lo, double cycles_hi, double cycles_step,
                                   const CostSettings& cs, double e_in, int n_phases,
                                   int jobs, const OptimizeOptions& oo) {
  MassRatioCooling out;
  out.ratio = ratio;
  out.design = solve_boundaries(with_mass_ratio(base, ratio));
  CostSettings cs_exact = cs;
  cs_exact.kind = CostKind::exact_nonrobust;
  std::vector<double> grid;
  for (const double cyc : linspace_step(cycles_lo, cycles_hi, cycles_step)) {
    grid.push_back(time_from_cycles(out.design, cyc));
  }
  out.sweep = runtime_sweep(out.design, grid, cs_exact, true, jobs, oo);
  out.cooling = find_cooling_time(out.design, out.sweep, e_in, 1, n_phases, jobs,
                                  cs_exact.ode);
  out.t_c_cycles = cycles_from_time(out.design, out.cooling.t_c);
  return out;
}

}  // namespace ionswap
