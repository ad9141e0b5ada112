#include "ionswap/design.hpp"

#include <cmath>
#include <string>

#include "ionswap/errors.hpp"
#include "ionswap/unequal.hpp"

namespace ionswap {

namespace {

constexpr double kCC = units::coulomb_coupling;

void check_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

double critical_distance(double beta_max) {
  check_positive(beta_max, "beta_max");
  return std::pow(2.0 * kCC / beta_max, 0.2);
}

double equilibrium_distance(double alpha, double beta) {
  check_positive(beta, "beta");
  const double dc = std::pow(2.0 * kCC / beta, 0.2);
  double lo = 1e-3 * dc, hi = 1e3 * dc;
  auto f = [&](double d) { return beta * std::pow(d, 5) + 2.0 * alpha * d * d * d - 2.0 * kCC; };
  if (!(f(lo) < 0.0) || !(f(hi) > 0.0)) {
    throw NumericsError("equilibrium distance bracket failed");
  }

  double d = dc;
  if (alpha < 0) d = std::max(dc, std::sqrt(-2.0 * alpha / beta));
  d = std::min(std::max(d, lo), hi);
  for (int it = 0; it < 200; ++it) {
    const double fd = f(d);
    if (fd > 0) hi = d; else lo = d;
    const double fp = 5.0 * beta * std::pow(d, 4) + 6.0 * alpha * d * d;
    double next = (fp != 0.0) ? d - fd / fp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - d) < 1e-15 * d) return next;
    d = next;
  }
  if (std::abs(f(d)) > 1e-9 * kCC) throw NumericsError("equilibrium distance did not converge");
  return d;
}

ModeFrequencies normal_modes(double alpha, double beta, double m) {
  check_positive(m, "mass");
  const double d = equilibrium_distance(alpha, beta);
  const double wm2 = (2.0 * alpha + 3.0 * beta * d * d) / m;
  if (!(wm2 > 0)) {
    throw InfeasibleError("in-phase mode collapsed: ions are not in separate wells");
  }
  const double wp2 = wm2 + 4.0 * kCC / (m * d * d * d);
  ModeFrequencies out;
  out.omega_minus = std::sqrt(wm2);
  out.omega_plus = std::sqrt(wp2);
  out.omega_local = std::sqrt(0.5 * (wm2 + wp2));
  return out;
}

std::pair<double, double> exchange_estimate(double m1, double m2, double omega1,
                                            double omega2, double d) {
  check_positive(m1, "m1");
  check_positive(m2, "m2");
  check_positive(omega1, "omega1");
  check_positive(omega2, "omega2");
  check_positive(d, "d");
  const double rate = kCC / (std::sqrt(m1 * m2) * std::sqrt(omega1 * omega2) * d * d * d);
  return {rate, M_PI / (2.0 * rate)};
}

namespace {

DesignBoundary solve_boundaries_equal(const PhysicalConstraints& c) {
  const double m = c.m1;
  DesignBoundary b;
  b.constraints = c;
  b.d_c = critical_distance(c.beta_max);
  if (c.d_in < b.d_c * (1.0 - 1e-12)) {
    throw InfeasibleError("d_in below the critical distance: wells merge at the waist");
  }
  if (c.d0 < c.d_in) {
    throw InfeasibleError("d0 must not be smaller than d_in");
  }

  // Waist: beta pinned at beta_max, alpha from the equilibrium condition.
  b.waist.beta = c.beta_max;
  b.waist.alpha = kCC / std::pow(c.d_in, 3) - 0.5 * c.beta_max * c.d_in * c.d_in;
  const double wm2 = (2.0 * b.waist.alpha + 3.0 * c.beta_max * c.d_in * c.d_in) / m;
  if (!(wm2 > 0)) throw InfeasibleError("in-phase mode collapsed at the waist");

  // Boundary: same in-phase frequency at separation d0.
  b.outer.beta = (m * wm2 - 2.0 * kCC / std::pow(c.d0, 3)) / (2.0 * c.d0 * c.d0);
  b.outer.alpha = kCC / std::pow(c.d0, 3) - 0.5 * b.outer.beta * c.d0 * c.d0;
  if (!(b.outer.beta > 0)) throw InfeasibleError("boundary quartic term non-positive: d0 too large");
  if (!(b.outer.alpha < 0) && c.d0 != c.d_in) {
    throw InfeasibleError("boundary quadratic term non-negative: no double well at d0");
  }

  b.omega_minus = std::sqrt(wm2);
  b.omega0_plus = std::sqrt(wm2 + 4.0 * kCC / (m * std::pow(c.d0, 3)));
  b.omega_in_plus = std::sqrt(wm2 + 4.0 * kCC / (m * std::pow(c.d_in, 3)));
  b.rho_in_plus = std::sqrt(b.omega0_plus / b.omega_in_plus);
  b.omega0 = std::sqrt(0.5 * (wm2 + b.omega0_plus * b.omega0_plus));
  auto [rate, te] = exchange_estimate(m, m, b.omega0, b.omega0, c.d0);
  b.exchange_rate = rate;
  b.exchange_time = te;
  return b;
}

}  // namespace

DesignBoundary solve_boundaries(const PhysicalConstraints& c) {
  check_positive(c.beta_max, "beta_max");
  check_positive(c.d0, "d0");
  check_positive(c.d_in, "d_in");
  check_positive(c.m1, "m1");
  check_positive(c.m2, "m2");
  if (c.equal_masses()) return solve_boundaries_equal(c);
  return solve_boundaries_unequal(c);
}

}  // namespace ionswap
