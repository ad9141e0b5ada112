#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "ionswap/errors.hpp"

namespace ionswap {

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double h_init = 0;  // 0: span/1000
  double h_max = 0;   // 0: span/10
  long max_steps = 20000000;
};

// Adaptive embedded Dormand-Prince 5(4) pair, FSAL. Integrates y' = f(t, y)
// from t0 to t1 in place. `f` is called as f(t, y, dydt) with arrays of
// length N. `on_accept(t, y)` runs after every accepted step; returning false
// aborts with NumericsError (used for ion-order checks). Throws on step-size
// collapse.
template <std::size_t N, class F, class Accept>
void integrate_dp5(F&& f, double t0, double t1, double* y, const OdeOptions& opt,
                   Accept&& on_accept) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // embedded 4th-order weights
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = t1 - t0;
  if (span == 0) return;
  const double dir = span > 0 ? 1.0 : -1.0;
  const double h_max = opt.h_max > 0 ? opt.h_max : std::abs(span) / 10.0;
  double h = opt.h_init > 0 ? opt.h_init : std::abs(span) / 1000.0;
  h = std::min(h, h_max);

  double k1[N], k2[N], k3[N], k4[N], k5[N], k6[N], k7[N], ytmp[N], y5[N];
  double t = t0;
  f(t, y, k1);
  bool last = false;

  for (long step = 0; step < opt.max_steps; ++step) {
    if (std::abs(t1 - t) <= std::abs(span) * 1e-16) return;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      last = true;
    } else {
      last = false;
    }
    const double hs = dir * h;

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
    f(t + c2 * hs, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * hs, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * hs, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * hs, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                             a65 * k5[i]);
    f(t + hs, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + hs, y5, k7);

    double err = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      t = last ? t1 : t + hs;
      for (std::size_t i = 0; i < N; ++i) {
        y[i] = y5[i];
        k1[i] = k7[i];
      }
      if (!on_accept(t, y)) throw NumericsError("integration aborted by step check");
      if (last) return;
    }
    const double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
    h = std::min(h, h_max);
    if (h < std::abs(span) * 1e-15) throw NumericsError("integrator step size collapsed");
  }
  throw NumericsError("integrator exceeded max step count");
}

template <std::size_t N, class F>
void integrate_dp5(F&& f, double t0, double t1, double* y, const OdeOptions& opt) {
  integrate_dp5<N>(static_cast<F&&>(f), t0, t1, y, opt,
                   [](double, const double*) { return true; });
}

}  // namespace ionswap
