#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ionswap/errors.hpp"
#include "ionswap/ode.hpp"
#include "oracles.hpp"

using namespace ionswap;

TEST_CASE("harmonic oscillator over many periods") {
  const double w = 2.0 * M_PI;
  auto rhs = [&](double, const double* y, double* dy) {
    dy[0] = y[1];
    dy[1] = -w * w * y[0];
  };
  double y[2] = {1.0, 0.0};
  OdeOptions opt;
  integrate_dp5<2>(rhs, 0.0, 50.0, y, opt);  // 50 full periods
  // Amplitude error is second order in the accumulated phase error.
  CHECK(std::abs(y[0] - 1.0) <= 1e-8);
  CHECK(std::abs(y[1]) <= 1e-5);
}

TEST_CASE("exponential decay") {
  auto rhs = [](double, const double* y, double* dy) { dy[0] = -y[0]; };
  double y[1] = {1.0};
  OdeOptions opt;
  integrate_dp5<1>(rhs, 0.0, 5.0, y, opt);
  CHECK(y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-9));
}

TEST_CASE("nonlinear oscillator against fixed-step RK4") {
  // Duffing-type restoring force; no closed form, so cross-check integrators.
  auto rhs = [](double, const double* y, double* dy) {
    dy[0] = y[1];
    dy[1] = -y[0] - 0.35 * y[0] * y[0] * y[0];
  };
  double y[2] = {1.2, -0.3};
  OdeOptions opt;
  integrate_dp5<2>(rhs, 0.0, 12.0, y, opt);

  double ref[2] = {1.2, -0.3};
  oracles::rk4<2>([&](double t, const double* v, double* dv) { rhs(t, v, dv); }, 0.0,
                  12.0, ref, 60000);
  CHECK(y[0] == doctest::Approx(ref[0]).epsilon(1e-8));
  CHECK(y[1] == doctest::Approx(ref[1]).epsilon(1e-8));
}

TEST_CASE("backward integration") {
  auto rhs = [](double, const double* y, double* dy) { dy[0] = -y[0]; };
  double y[1] = {std::exp(-3.0)};
  OdeOptions opt;
  integrate_dp5<1>(rhs, 3.0, 0.0, y, opt);
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero span is a no-op") {
  int calls = 0;
  auto rhs = [&](double, const double* y, double* dy) {
    ++calls;
    dy[0] = y[0];
  };
  double y[1] = {7.0};
  OdeOptions opt;
  integrate_dp5<1>(rhs, 2.0, 2.0, y, opt);
  CHECK(y[0] == 7.0);
  CHECK(calls == 0);
}

TEST_CASE("accept hook can abort") {
  auto rhs = [](double, const double* y, double* dy) { dy[0] = y[0]; };
  double y[1] = {1.0};
  OdeOptions opt;
  CHECK_THROWS_AS(integrate_dp5<1>(rhs, 0.0, 10.0, y, opt,
                                   [](double, const double* v) { return v[0] < 5.0; }),
                  NumericsError);
}

TEST_CASE("step budget is enforced") {
  const double w = 2.0 * M_PI;
  auto rhs = [&](double, const double* y, double* dy) {
    dy[0] = y[1];
    dy[1] = -w * w * y[0];
  };
  double y[2] = {1.0, 0.0};
  OdeOptions opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-14;
  opt.max_steps = 20;
  CHECK_THROWS_AS(integrate_dp5<2>(rhs, 0.0, 1000.0, y, opt), NumericsError);
}

TEST_CASE("tolerance controls the error") {
  const double w = 3.0;
  auto rhs = [&](double, const double* y, double* dy) {
    dy[0] = y[1];
    dy[1] = -w * w * y[0];
  };
  double errs[2];
  int idx = 0;
  for (double rt : {1e-6, 1e-10}) {
    double y[2] = {1.0, 0.0};
    OdeOptions opt;
    opt.rel_tol = rt;
    opt.abs_tol = rt * 1e-2;
    integrate_dp5<2>(rhs, 0.0, 20.0, y, opt);
    errs[idx++] = std::abs(y[0] - std::cos(w * 20.0));
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[1] <= 1e-7);
}

TEST_CASE("sampled endpoint lands exactly") {
  // The final accepted step must place t exactly at t1, not within epsilon.
  auto rhs = [](double, const double*, double* dy) { dy[0] = 1.0; };
  double y[1] = {0.0};
  OdeOptions opt;
  double t_last = -1.0;
  integrate_dp5<1>(rhs, 0.0, 7.3, y, opt, [&](double t, const double*) {
    t_last = t;
    return true;
  });
  CHECK(t_last == 7.3);
  CHECK(y[0] == doctest::Approx(7.3).epsilon(1e-13));
}
