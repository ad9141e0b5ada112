#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ionswap/design.hpp"
#include "ionswap/errors.hpp"
#include "ionswap/protocol.hpp"
#include "oracles.hpp"

using namespace ionswap;

namespace {

DesignBoundary benchmark() {
  PhysicalConstraints c;
  c.beta_max = units::parse_quantity("0.85e-3 N/m^3");
  const double d_c = critical_distance(c.beta_max);
  c.d0 = 5.0 * d_c;
  c.d_in = 1.1 * d_c;
  c.m1 = c.m2 = 39.96;
  return solve_boundaries(c);
}

}  // namespace

TEST_CASE("mode curve hits the design boundaries") {
  const DesignBoundary dsn = benchmark();
  const Protocol p(dsn, 0.0, 0.0, 30.0);

  CHECK(p.t_f() == 30.0);
  CHECK(p.omega_minus_sq() == doctest::Approx(dsn.omega_minus * dsn.omega_minus));
  // rho = 1 with flat derivatives at the edges pins omega_+ to its boundary value.
  CHECK(p.omega_plus_sq(0.0) ==
        doctest::Approx(dsn.omega0_plus * dsn.omega0_plus).epsilon(1e-10));
  CHECK(p.omega_plus_sq(30.0) ==
        doctest::Approx(dsn.omega0_plus * dsn.omega0_plus).epsilon(1e-10));

  const PotentialSnapshot at0 = p.at(0.0);
  const PotentialSnapshot mid = p.at(15.0);
  const PotentialSnapshot at1 = p.at(30.0);
  CHECK(at0.d == doctest::Approx(dsn.constraints.d0).epsilon(1e-9));
  CHECK(at1.d == doctest::Approx(dsn.constraints.d0).epsilon(1e-9));
  CHECK(at0.well.alpha == doctest::Approx(dsn.outer.alpha).epsilon(1e-8));
  CHECK(at0.well.beta == doctest::Approx(dsn.outer.beta).epsilon(1e-8));
  CHECK(std::abs(at0.d_dot) <= 1e-9);
  CHECK(std::abs(at0.d_ddot) <= 1e-7);
  CHECK(at0.s == 0.0);

  // Unforced curve (A = 0): the midpoint curvature vanishes, so the protocol
  // touches the waist exactly, with the quartic coefficient at its ceiling.
  CHECK(mid.d == doctest::Approx(dsn.constraints.d_in).epsilon(1e-10));
  CHECK(mid.well.beta == doctest::Approx(dsn.constraints.beta_max).epsilon(1e-10));
  CHECK(mid.well.alpha == doctest::Approx(dsn.waist.alpha).epsilon(1e-8));
  CHECK(std::abs(mid.d_dot) <= 1e-10);
}

TEST_CASE("mode evolution derivatives match finite differences") {
  const DesignBoundary dsn = benchmark();
  const Protocol p(dsn, 40.0, -2e4, 25.0);

  auto wp2 = [&](double t) { return p.omega_plus_sq(t); };
  const double h = 1e-4;
  for (double t : {3.0, 8.0, 12.5, 17.0, 22.0}) {
    double rho[5];
    p.rho_plus(t, rho);
    const ModeEvolution me = mode_evolution(dsn, rho);
    CHECK(me.omega_plus_sq == doctest::Approx(wp2(t)).epsilon(1e-14));
    CHECK(me.omega_plus_sq_dot == doctest::Approx(oracles::fd1(wp2, t, h)).epsilon(1e-7));
    const double ref2 = oracles::fd2(wp2, t, h);
    CHECK(std::abs(me.omega_plus_sq_ddot - ref2) <=
          1e-5 * std::max(1.0, std::abs(ref2)));
  }
}

TEST_CASE("snapshot time derivatives match finite differences") {
  const DesignBoundary dsn = benchmark();
  // Negative A deepens the waist dip but keeps rho <= 1, which is what the
  // thin boundary gap (~0.5% of omega^2) survives.
  const Protocol p(dsn, -8.0, -1500.0, 25.0);

  auto dist = [&](double t) { return p.at(t).d; };
  for (double t : {5.0, 12.5, 20.0}) {
    const PotentialSnapshot snap = p.at(t);
    CHECK(snap.d_dot == doctest::Approx(oracles::fd1(dist, t, 1e-4)).epsilon(1e-6));
    const double ref2 = oracles::fd2(dist, t, 1e-3);
    CHECK(std::abs(snap.d_ddot - ref2) <= 1e-5 * std::max(1.0, std::abs(ref2)));
  }
}

TEST_CASE("reconstruction inverts the potential map") {
  const DesignBoundary dsn = benchmark();
  const Protocol p(dsn, -8.0, -1500.0, 25.0);
  constexpr double kCC = units::coulomb_coupling;
  const double m = dsn.constraints.m1;

  for (double t : {0.0, 4.0, 9.0, 12.5, 18.0, 25.0}) {
    const PotentialSnapshot snap = p.at(t);
    // The reconstructed well reproduces the separation...
    CHECK(equilibrium_distance(snap.well.alpha, snap.well.beta) ==
          doctest::Approx(snap.d).epsilon(1e-12));
    // ...and its normal modes are exactly the prescribed mode pair.
    const ModeFrequencies mf = normal_modes(snap.well.alpha, snap.well.beta, m);
    CHECK(mf.omega_minus * mf.omega_minus ==
          doctest::Approx(snap.omega_minus_sq).epsilon(1e-11));
    CHECK(mf.omega_plus * mf.omega_plus ==
          doctest::Approx(snap.omega_plus_sq).epsilon(1e-11));
    // Separation encodes the mode-frequency gap through the Coulomb coupling.
    const double gap = snap.omega_plus_sq - snap.omega_minus_sq;
    CHECK(snap.d == doctest::Approx(std::cbrt(4.0 * kCC / (m * gap))).epsilon(1e-13));
    CHECK(snap.well.gamma == 0.0);
    CHECK(snap.s == 0.0);
  }
}

TEST_CASE("symmetric protocol in time") {
  const DesignBoundary dsn = benchmark();
  const Protocol p(dsn, -8.0, 1500.0, 20.0);
  for (double t : {1.0, 4.0, 7.5}) {
    const PotentialSnapshot a = p.at(t);
    const PotentialSnapshot b = p.at(20.0 - t);
    CHECK(a.d == doctest::Approx(b.d).epsilon(1e-12));
    CHECK(a.d_dot == doctest::Approx(-b.d_dot).epsilon(1e-10));
    CHECK(a.well.alpha == doctest::Approx(b.well.alpha).epsilon(1e-12));
    CHECK(a.well.beta == doctest::Approx(b.well.beta).epsilon(1e-12));
  }
}

TEST_CASE("gap closure is reported, not fabricated") {
  const DesignBoundary dsn = benchmark();
  // Violent curvature demand at a short run-time drives omega_+^2 through
  // omega_-^2; the reconstruction must refuse.
  const Protocol bad(dsn, 1e6, 0.0, 8.0);
  bool closed = false;
  PotentialSnapshot snap;
  for (int i = 0; i <= 200; ++i) {
    if (!bad.try_at(8.0 * i / 200.0, snap)) {
      closed = true;
      break;
    }
  }
  CHECK(closed);
  CHECK(bad.beta_overshoot() == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS([&] {
    for (int i = 0; i <= 200; ++i) (void)bad.at(8.0 * i / 200.0);
  }(), NumericsError);
}

TEST_CASE("quartic coefficient overshoot measure") {
  const DesignBoundary dsn = benchmark();
  // The unforced curve keeps beta at or below its ceiling.
  CHECK(Protocol(dsn, 0.0, 0.0, 30.0).beta_overshoot() <= 1e-6);
  // Pushing rho below rho_in squeezes the waist below d_in, forcing beta past
  // the ceiling (more negative A deepens the dip).
  const double over = Protocol(dsn, -400.0, 0.0, 30.0).beta_overshoot();
  CHECK(over > 1e-3);
}

TEST_CASE("run-time must be positive") {
  const DesignBoundary dsn = benchmark();
  CHECK_THROWS_AS(Protocol(dsn, 0.0, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(Protocol(dsn, 0.0, 0.0, -5.0), ConfigError);
}
