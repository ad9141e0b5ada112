#include "ionswap/dynamics.hpp"

#include <cmath>

#include "ionswap/errors.hpp"
#include "ionswap/units.hpp"

namespace ionswap {

namespace {

constexpr double kCC = units::coulomb_coupling;

double v_el(const WellParams& w, double x) {
  return w.gamma * x + w.alpha * x * x + w.beta * x * x * x * x;
}

double v_el_prime(const WellParams& w, double x) {
  return w.gamma + 2.0 * w.alpha * x + 4.0 * w.beta * x * x * x;
}

double v_el_second(const WellParams& w, double x) {
  return 2.0 * w.alpha + 12.0 * w.beta * x * x;
}

// One damped Newton pass on the stationarity conditions
//   dV/dx1 = V_el'(x1) + C/(x2-x1)^2 = 0
//   dV/dx2 = V_el'(x2) - C/(x2-x1)^2 = 0.
bool newton_equilibria(const WellParams& w, double& x1, double& x2) {
  for (int it = 0; it < 80; ++it) {
    const double d = x2 - x1;
    if (!(d > 0)) return false;
    const double fc = kCC / (d * d);
    const double g1 = v_el_prime(w, x1) + fc;
    const double g2 = v_el_prime(w, x2) - fc;
    const double jc = 2.0 * kCC / (d * d * d);
    const double j11 = v_el_second(w, x1) + jc;
    const double j22 = v_el_second(w, x2) + jc;
    const double j12 = -jc;
    const double det = j11 * j22 - j12 * j12;
    if (det == 0 || !std::isfinite(det)) return false;
    double dx1 = -(g1 * j22 - g2 * j12) / det;
    double dx2 = -(g2 * j11 - g1 * j12) / det;
    const double step = std::max(std::abs(dx1), std::abs(dx2));
    if (step > 0.2 * d) {
      const double damp = 0.2 * d / step;
      dx1 *= damp;
      dx2 *= damp;
    }
    x1 += dx1;
    x2 += dx2;
    if (step < 1e-14 * d) {
      const double dd = x2 - x1;
      const double scale = kCC / (dd * dd);
      const double r1 = v_el_prime(w, x1) + kCC / (dd * dd);
      const double r2 = v_el_prime(w, x2) - kCC / (dd * dd);
      return std::abs(r1) < 1e-10 * scale && std::abs(r2) < 1e-10 * scale;
    }
  }
  return false;
}

}  // namespace

EquilibriumPair equilibrium_positions(const WellParams& w, const EquilibriumPair& guess) {
  double x1 = guess.x1, x2 = guess.x2;
  if (newton_equilibria(w, x1, x2)) return {x1, x2};
  // Homotopy in gamma from the symmetric solution.
  const double d = equilibrium_distance(w.alpha, w.beta);
  x1 = -0.5 * d;
  x2 = 0.5 * d;
  for (int k = 1; k <= 8; ++k) {
    WellParams wk = w;
    wk.gamma = w.gamma * (static_cast<double>(k) / 8.0);
    if (!newton_equilibria(wk, x1, x2)) {
      throw NumericsError("equilibrium solve failed");
    }
  }
  return {x1, x2};
}

EquilibriumPair equilibrium_positions(const WellParams& w) {
  const double d = equilibrium_distance(w.alpha, w.beta);
  return equilibrium_positions(w, {-0.5 * d, 0.5 * d});
}

ExcitationEnergies excitation_energies(const WellParams& w, double m1, double m2,
                                       const IonState& s, const EquilibriumPair& eq) {
  const double d = eq.d();
  const double fc = kCC / (d * d);
  ExcitationEnergies e;
  // Group the potential difference first: it is the small physical quantity,
  // and summing it before the kinetic term keeps excitations at the 1e-5 scale
  // from absorbing the ~1e5 absolute well depth.
  e.ion1 = 0.5 * s.p1 * s.p1 / m1 + (v_el(w, s.x1) - v_el(w, eq.x1)) + fc * (s.x1 - eq.x1);
  e.ion2 = 0.5 * s.p2 * s.p2 / m2 + (v_el(w, s.x2) - v_el(w, eq.x2)) - fc * (s.x2 - eq.x2);
  return e;
}

ExcitationEnergies excitation_energies(const WellParams& w, double m1, double m2,
                                       const IonState& s) {
  return excitation_energies(w, m1, m2, s, equilibrium_positions(w));
}

std::pair<double, double> local_frequencies(const WellParams& w, double m1, double m2,
                                            const EquilibriumPair& eq) {
  const double d = eq.d();
  const double jc = 2.0 * kCC / (d * d * d);
  const double k1 = v_el_second(w, eq.x1) + jc;
  const double k2 = v_el_second(w, eq.x2) + jc;
  if (!(k1 > 0) || !(k2 > 0)) throw InfeasibleError("local curvature not confining");
  return {std::sqrt(k1 / m1), std::sqrt(k2 / m2)};
}

IonState prepare_state(const WellParams& w, double m1, double m2, int hot_ion,
                       double e_in, double phi) {
  if (hot_ion != 1 && hot_ion != 2) throw ConfigError("hot ion index must be 1 or 2");
  if (e_in < 0) throw ConfigError("initial energy must be nonnegative");
  const EquilibriumPair eq = equilibrium_positions(w);
  IonState s{eq.x1, eq.x2, 0, 0};
  if (e_in == 0) return s;
  const auto [w1, w2] = local_frequencies(w, m1, m2, eq);
  const double m = hot_ion == 1 ? m1 : m2;
  const double wloc = hot_ion == 1 ? w1 : w2;
  const double dx = std::sqrt(2.0 * e_in / (m * wloc * wloc)) * std::sin(phi);
  const double p = std::sqrt(2.0 * m * e_in) * std::cos(phi);
  if (hot_ion == 1) {
    s.x1 += dx;
    s.p1 = p;
  } else {
    s.x2 += dx;
    s.p2 = p;
  }
  return s;
}

double stray_gamma(const DesignBoundary& dsn, double eta) {
  if (eta != 0 && !dsn.constraints.equal_masses()) {
    throw ConfigError("stray-field scans are only defined for equal masses");
  }
  const double wm2 = dsn.omega_minus * dsn.omega_minus;
  return eta * dsn.constraints.m1 * wm2 * dsn.constraints.d_in;
}

WellSchedule schedule_from_protocol(const Protocol& p, double eta) {
  const double g = stray_gamma(p.design(), eta);
  return [p, g](double t) {
    WellParams w = p.at(t).well;
    w.gamma += g;
    return w;
  };
}

namespace {

IonState run_segment(const WellSchedule& sched, double m1, double m2, IonState s,
                     double t0, double t1, const OdeOptions& opt) {
  auto rhs = [&](double t, const double* y, double* dydt) {
    const WellParams w = sched(t);
    const double gap = y[1] - y[0];
    const double fc = kCC / (gap * gap);
    dydt[0] = y[2] / m1;
    dydt[1] = y[3] / m2;
    dydt[2] = -v_el_prime(w, y[0]) - fc;
    dydt[3] = -v_el_prime(w, y[1]) + fc;
  };
  double y[4] = {s.x1, s.x2, s.p1, s.p2};
  integrate_dp5<4>(rhs, t0, t1, y, opt,
                   [](double, const double* v) { return v[1] - v[0] > 1e-6; });
  return {y[0], y[1], y[2], y[3]};
}

}  // namespace

IonState simulate(const WellSchedule& sched, double m1, double m2, IonState s,
                  double t0, double t1, const OdeOptions& opt) {
  return run_segment(sched, m1, m2, s, t0, t1, opt);
}

IonState simulate_sampled(const WellSchedule& sched, double m1, double m2, IonState s,
                          double t0, double t1, std::span<const double> times,
                          const std::function<void(double, const IonState&)>& on_sample,
                          const OdeOptions& opt) {
  double t = t0;
  for (const double ts : times) {
    if (ts < t - 1e-12 || ts > t1 + 1e-12) throw ConfigError("sample times must ascend within the run");
    if (ts > t) s = run_segment(sched, m1, m2, s, t, ts, opt);
    t = ts;
    if (on_sample) on_sample(ts, s);
  }
  if (t < t1) s = run_segment(sched, m1, m2, s, t, t1, opt);
  return s;
}

double total_energy(const WellParams& w, double m1, double m2, const IonState& s) {
  return 0.5 * s.p1 * s.p1 / m1 + 0.5 * s.p2 * s.p2 / m2 + v_el(w, s.x1) + v_el(w, s.x2) +
         kCC / (s.x2 - s.x1);
}

}  // namespace ionswap
