#pragma once

#include <span>

namespace ionswap {

// Least-squares fit of f(t) = a*exp(-b t)*sin^2(c t + d) to an excitation
// curve, done in log space with the amplitude pair (log a, b) profiled out
// linearly for each trial (c, d). t_crit solves a*exp(-b t) = threshold.
struct EnvelopeFit {
  double a = 0;
  double b = 0;
  double c = 0;
  double d = 0;
  double t_crit = 0;
  double median_peak_residual = 0;  // median relative residual on local maxima
  int n_used = 0;
  bool ok = false;
};

EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> e,
                         double threshold = 0.1);

double envelope_model(const EnvelopeFit& f, double t);

// One-parameter Lorentzian dip E(eta) = e_in*(1 - 1/(1 + (eta/eta_half)^2))
// with eta_half = 1/(24 k r^5), r = d_in/d_c. Fit restricted to points below
// `e_cap`.
struct LorentzFit {
  double k = 0;
  double eta_half = 0;
  double rel_rms = 0;
  int n_used = 0;
  bool ok = false;
};

LorentzFit fit_lorentzian(std::span<const double> eta, std::span<const double> e,
                          double e_in, double d_ratio, double e_cap = 2.0);

// |eta| at which the dip passes e_target, from the fitted half width.
double tolerable_eta(double eta_half, double e_target, double e_in);

// Slope of log y against log x (least squares); inputs must be positive.
double power_law_exponent(std::span<const double> x, std::span<const double> y);

// Vertex of the parabola through three points; falls back to the middle
// abscissa when the points are not convex.
double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2);

}  // namespace ionswap
