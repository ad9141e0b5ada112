#include "ionswap/protocol.hpp"

#include <cmath>
#include <limits>

#include "ionswap/errors.hpp"

namespace ionswap {

namespace {
constexpr double kCC = units::coulomb_coupling;
}

ModeEvolution mode_evolution(const DesignBoundary& design, const double rho[5]) {
  const double w0p2 = design.omega0_plus * design.omega0_plus;
  const double r = rho[0], r1 = rho[1], r2 = rho[2], r3 = rho[3], r4 = rho[4];
  const double r_2 = r * r;
  const double r_4 = r_2 * r_2;
  ModeEvolution me;
  me.omega_minus_sq = design.omega_minus * design.omega_minus;
  me.omega_plus_sq = w0p2 / r_4 - r2 / r;
  me.omega_plus_sq_dot = -4.0 * w0p2 * r1 / (r_4 * r) - r3 / r + r2 * r1 / r_2;
  me.omega_plus_sq_ddot = -4.0 * w0p2 * (r2 / (r_4 * r) - 5.0 * r1 * r1 / (r_4 * r_2)) -
                          r4 / r + 2.0 * r3 * r1 / r_2 + r2 * r2 / r_2 -
                          2.0 * r2 * r1 * r1 / (r_2 * r);
  return me;
}

bool reconstruct_equal(const DesignBoundary& design, const ModeEvolution& me,
                       PotentialSnapshot& out) {
  const double m = design.constraints.m1;
  const double W = me.omega_plus_sq - me.omega_minus_sq;
  if (!(W > 0) || !std::isfinite(W)) return false;
  const double Wd = me.omega_plus_sq_dot;
  const double Wdd = me.omega_plus_sq_ddot;

  const double d = std::cbrt(4.0 * kCC / (m * W));
  out.d = d;
  out.d_dot = -d * Wd / (3.0 * W);
  out.d_ddot = d * ((4.0 / 9.0) * (Wd / W) * (Wd / W) - Wdd / (3.0 * W));
  out.s = out.s_dot = out.s_ddot = 0.0;

  const double d2 = d * d, d3 = d2 * d;
  const double beta = (m * me.omega_minus_sq - 2.0 * kCC / d3) / (2.0 * d2);
  if (!(beta > 0)) return false;
  out.well.beta = beta;
  out.well.alpha = kCC / d3 - 0.5 * beta * d2;
  out.well.gamma = 0.0;
  out.omega_minus_sq = me.omega_minus_sq;
  out.omega_plus_sq = me.omega_plus_sq;
  return true;
}

bool reconstruct_general(const DesignBoundary& design, const ModeEvolution& me,
                         PotentialSnapshot& out) {
  const double m1 = design.constraints.m1, m2 = design.constraints.m2;
  const double mu = std::sqrt(m1 * m2);
  const double M = m1 + m2;

  const double W = me.omega_plus_sq - me.omega_minus_sq;
  if (!(W > 0) || !std::isfinite(W)) return false;
  const double Wd = me.omega_plus_sq_dot;
  const double Wdd = me.omega_plus_sq_ddot;
  const double T = me.omega_plus_sq + me.omega_minus_sq;  // Td = Wd, Tdd = Wdd

  const double d = std::cbrt(4.0 * kCC / (mu * W));
  const double dd = -d * Wd / (3.0 * W);
  const double ddd = d * ((4.0 / 9.0) * (Wd / W) * (Wd / W) - Wdd / (3.0 * W));
  const double d2 = d * d, d3 = d2 * d;

  const double beta = M * T / (8.0 * d2) - 2.0 * kCC / (d3 * d2);
  if (!(beta > 0)) return false;
  const double beta_dot =
      (M / 8.0) * (Wd / d2 - 2.0 * T * dd / d3) + 10.0 * kCC * dd / (d3 * d3);
  const double beta_ddot =
      (M / 8.0) * (Wdd / d2 - 4.0 * Wd * dd / d3 + 6.0 * T * dd * dd / (d2 * d2) -
                   2.0 * T * ddd / d3) -
      60.0 * kCC * dd * dd / (d3 * d3 * d) + 10.0 * kCC * ddd / (d3 * d3);

  // s = ks * T / (beta * d); product rule through u = 1/beta, v = 1/d.
  const double ks = (m2 - m1) / 48.0;
  const double u = 1.0 / beta, v = 1.0 / d;
  const double ud = -beta_dot * u * u;
  const double udd = -beta_ddot * u * u + 2.0 * beta_dot * beta_dot * u * u * u;
  const double vd = -dd * v * v;
  const double vdd = -ddd * v * v + 2.0 * dd * dd * v * v * v;
  const double s = ks * T * u * v;
  const double s_dot = ks * (Wd * u * v + T * ud * v + T * u * vd);
  const double s_ddot = ks * (Wdd * u * v + 2.0 * Wd * ud * v + 2.0 * Wd * u * vd +
                              T * udd * v + 2.0 * T * ud * vd + T * u * vdd);

  out.d = d;
  out.d_dot = dd;
  out.d_ddot = ddd;
  out.s = s;
  out.s_dot = s_dot;
  out.s_ddot = s_ddot;
  out.well.beta = beta;
  out.well.alpha = kCC / d3 - 0.5 * beta * d2 - 6.0 * beta * s * s;
  out.well.gamma = -2.0 * out.well.alpha * s - 2.0 * beta * (2.0 * s * s * s + 1.5 * d2 * s);
  out.omega_minus_sq = me.omega_minus_sq;
  out.omega_plus_sq = me.omega_plus_sq;
  return true;
}

Protocol::Protocol(const DesignBoundary& design, double A, double B, double t_f)
    : design_(design), ansatz_(design.rho_in_plus, A, B), t_f_(t_f) {
  if (!(t_f > 0)) throw ConfigError("t_f must be positive");
}

void Protocol::rho_plus(double t, double out[5]) const {
  ansatz_.eval_s(t / t_f_, out);
  double scale = 1.0;
  for (int k = 1; k <= 4; ++k) {
    scale /= t_f_;
    out[k] *= scale;
  }
}

double Protocol::omega_minus_sq() const {
  return design_.omega_minus * design_.omega_minus;
}

double Protocol::omega_plus_sq(double t) const {
  double r[5];
  rho_plus(t, r);
  return mode_evolution(design_, r).omega_plus_sq;
}

bool Protocol::try_at(double t, PotentialSnapshot& out) const {
  double r[5];
  rho_plus(t, r);
  const ModeEvolution me = mode_evolution(design_, r);
  out.t = t;
  if (design_.constraints.equal_masses()) return reconstruct_equal(design_, me, out);
  return reconstruct_general(design_, me, out);
}

PotentialSnapshot Protocol::at(double t) const {
  PotentialSnapshot snap;
  if (!try_at(t, snap)) {
    throw NumericsError("unphysical protocol: mode gap closed at t = " + std::to_string(t));
  }
  return snap;
}

double Protocol::beta_overshoot(int samples) const {
  double worst = -std::numeric_limits<double>::infinity();
  PotentialSnapshot snap;
  for (int i = 0; i < samples; ++i) {
    const double t = t_f_ * i / (samples - 1);
    if (!try_at(t, snap)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, snap.well.beta / design_.constraints.beta_max - 1.0);
  }
  return worst;
}

}  // namespace ionswap
