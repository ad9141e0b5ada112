#include "ionswap/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ionswap/errors.hpp"
#include "ionswap/optimize.hpp"

namespace ionswap {

namespace {

constexpr double kFloorQuanta = 1e-11;  // below this the data is integrator noise
constexpr double kClampQuanta = 1e-14;
constexpr double kMinSinSq = 1e-6;

struct LinearFit {
  double log_a = 0;
  double b = 0;
  double sse = std::numeric_limits<double>::infinity();
  int n = 0;
};

// Given (c, d), solve the linear profile z = log a - b t for the points where
// the oscillating factor is resolvable.
LinearFit profile_amplitude(std::span<const double> t, std::span<const double> logy,
                            double c, double d) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> ti, zi;
  ti.reserve(t.size());
  zi.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = std::sin(c * t[i] + d);
    const double s2 = s * s;
    if (s2 < kMinSinSq) continue;
    const double z = logy[i] - std::log(s2);
    ti.push_back(t[i]);
    zi.push_back(z);
    sx += t[i];
    sy += z;
    sxx += t[i] * t[i];
    sxy += t[i] * z;
  }
  LinearFit out;
  out.n = static_cast<int>(ti.size());
  if (out.n < 4) return out;
  const double n = static_cast<double>(out.n);
  const double det = n * sxx - sx * sx;
  if (det == 0) return out;
  const double slope = (n * sxy - sx * sy) / det;
  const double icept = (sy - slope * sx) / n;
  out.log_a = icept;
  out.b = -slope;
  out.sse = 0;
  for (std::size_t i = 0; i < ti.size(); ++i) {
    const double r = zi[i] - (icept + slope * ti[i]);
    out.sse += r * r;
  }
  return out;
}

}  // namespace

double envelope_model(const EnvelopeFit& f, double t) {
  const double s = std::sin(f.c * t + f.d);
  return f.a * std::exp(-f.b * t) * s * s;
}

EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> e,
                         double threshold) {
  if (t.size() != e.size()) throw ConfigError("envelope fit: mismatched arrays");
  std::vector<double> tu, yu, logy;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(e[i] > kFloorQuanta) || !std::isfinite(e[i])) continue;
    tu.push_back(t[i]);
    yu.push_back(e[i]);
    logy.push_back(std::log(std::max(e[i], kClampQuanta)));
  }
  EnvelopeFit fit;
  fit.n_used = static_cast<int>(tu.size());
  if (tu.size() < 8) return fit;

  // Multi-start over the oscillation: the profiled SSE is very rugged in c,
  // with basins of width ~pi/(t span). A coarse global sweep locates the
  // basin to one grid step; a fine local sweep (full phase range, since the
  // coarse d may be aliased against the refined c) gets inside it before the
  // simplex polish, which cannot cross basins on its own.
  double best_sse = std::numeric_limits<double>::infinity();
  double best_c = 0, best_d = 0;
  auto consider = [&](double c, double d) {
    const LinearFit lf = profile_amplitude(tu, logy, c, d);
    if (lf.n >= static_cast<int>(tu.size()) / 2 && lf.sse < best_sse) {
      best_sse = lf.sse;
      best_c = c;
      best_d = d;
    }
  };
  for (double c = 0.2; c <= 3.5 + 1e-12; c += 0.02) {
    for (double d = 0; d < M_PI; d += M_PI / 12.0) consider(c, d);
  }
  if (!std::isfinite(best_sse)) return fit;
  const double c_coarse = best_c;
  for (double c = c_coarse - 0.04; c <= c_coarse + 0.04 + 1e-12; c += 0.001) {
    for (double d = 0; d < M_PI; d += M_PI / 48.0) consider(c, d);
  }

  auto objective = [&](const std::vector<double>& v) {
    const LinearFit lf = profile_amplitude(tu, logy, v[0], v[1]);
    if (lf.n < static_cast<int>(tu.size()) / 2) {
      return best_sse * 10.0 + std::abs(v[0]) + std::abs(v[1]);
    }
    return lf.sse;
  };
  SimplexOptions so;
  so.cost_tol = 1e-12;
  so.param_tol = 1e-10;
  so.max_evals = 800;
  so.init_step = 0.01;
  so.init_frac = 0.02;
  const SimplexResult r = nelder_mead(objective, {best_c, best_d}, so);
  const LinearFit lf = profile_amplitude(tu, logy, r.x[0], r.x[1]);
  if (lf.n < 4 || !(lf.b > 0)) return fit;

  fit.a = std::exp(lf.log_a);
  fit.b = lf.b;
  fit.c = r.x[0];
  fit.d = std::fmod(r.x[1], M_PI);
  if (fit.d < 0) fit.d += M_PI;
  fit.t_crit = std::log(fit.a / threshold) / fit.b;

  // Quality gate: the model must track the local maxima of the data.
  std::vector<double> peak_res;
  for (std::size_t i = 1; i + 1 < tu.size(); ++i) {
    if (yu[i] > yu[i - 1] && yu[i] > yu[i + 1]) {
      peak_res.push_back(std::abs(envelope_model(fit, tu[i]) - yu[i]) / yu[i]);
    }
  }
  if (!peak_res.empty()) {
    std::sort(peak_res.begin(), peak_res.end());
    fit.median_peak_residual = peak_res[peak_res.size() / 2];
  }
  fit.ok = true;
  return fit;
}

namespace {

double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

LorentzFit fit_lorentzian(std::span<const double> eta, std::span<const double> e,
                          double e_in, double d_ratio, double e_cap) {
  if (eta.size() != e.size()) throw ConfigError("lorentzian fit: mismatched arrays");
  if (!(e_in > 0) || !(d_ratio > 0)) throw ConfigError("lorentzian fit: bad scales");
  std::vector<double> xu, yu;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (!std::isfinite(e[i]) || e[i] >= e_cap) continue;
    xu.push_back(eta[i]);
    yu.push_back(e[i]);
  }
  LorentzFit fit;
  fit.n_used = static_cast<int>(xu.size());
  if (xu.size() < 5) return fit;

  const double r5 = std::pow(d_ratio, 5);
  auto model = [&](double k, double x) {
    const double hw = 1.0 / (24.0 * k * r5);
    const double u = x / hw;
    return e_in * (1.0 - 1.0 / (1.0 + u * u));
  };
  auto sse = [&](double k) {
    double s = 0;
    for (std::size_t i = 0; i < xu.size(); ++i) {
      const double d = model(k, xu[i]) - yu[i];
      s += d * d;
    }
    return s;
  };
  fit.k = golden_min(sse, 0.05, 5.0, 1e-10);
  fit.eta_half = 1.0 / (24.0 * fit.k * r5);
  double s = 0, sy = 0;
  for (std::size_t i = 0; i < xu.size(); ++i) {
    const double d = model(fit.k, xu[i]) - yu[i];
    s += d * d;
    sy += yu[i] * yu[i];
  }
  fit.rel_rms = sy > 0 ? std::sqrt(s / sy) : 0;
  fit.ok = true;
  return fit;
}

double tolerable_eta(double eta_half, double e_target, double e_in) {
  if (!(e_in > e_target) || !(e_target > 0)) {
    throw ConfigError("tolerable_eta needs 0 < e_target < e_in");
  }
  const double q = e_target / e_in;
  return eta_half * std::sqrt(q / (1.0 - q));
}

double power_law_exponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("power law: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw ConfigError("power law: inputs must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double det = n * sxx - sx * sx;
  if (det == 0) throw ConfigError("power law: degenerate abscissae");
  return (n * sxy - sx * sy) / det;
}

double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d0 = (y1 - y0) / (x1 - x0);
  const double d1 = (y2 - y1) / (x2 - x1);
  const double curv = (d1 - d0) / (x2 - x0);
  if (!(curv > 0)) return x1;
  const double v = 0.5 * (x0 + x1) - d0 / (2.0 * curv);
  return std::clamp(v, std::min(x0, x2), std::max(x0, x2));
}

}  // namespace ionswap
