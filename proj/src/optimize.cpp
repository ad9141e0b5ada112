#include "ionswap/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ionswap/aux_energy.hpp"
#include "ionswap/dynamics.hpp"
#include "ionswap/errors.hpp"
#include "ionswap/protocol.hpp"

namespace ionswap {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0) throw ConfigError("nelder_mead needs at least one parameter");

  std::vector<std::vector<double>> xs(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < opt.init_steps.size() && opt.init_steps[i] != 0) {
      xs[i + 1][i] += opt.init_steps[i];
    } else {
      xs[i + 1][i] += x0[i] != 0 ? opt.init_frac * std::abs(x0[i]) : opt.init_step;
    }
  }
  std::vector<double> fs(n + 1);
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    fs[i] = f(xs[i]);
    ++evals;
  }

  std::vector<std::size_t> order(n + 1);
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
  };

  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  bool converged = false;
  while (evals < opt.max_evals) {
    sort_order();
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    if (fs[worst] - fs[best] < opt.cost_tol) {
      converged = true;
      break;
    }
    double diam = 0, scale = 1;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        diam = std::max(diam, std::abs(xs[i][j] - xs[best][j]));
        scale = std::max(scale, std::abs(xs[best][j]));
      }
    }
    if (diam < opt.param_tol * scale) {
      converged = true;
      break;
    }

    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t i = 0; i <= n; ++i) {
        if (i != worst) s += xs[i][j];
      }
      centroid[j] = s / static_cast<double>(n);
    }
    for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - xs[worst][j]);
    const double fr = f(xr);
    ++evals;

    if (fr < fs[best]) {
      for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (centroid[j] - xs[worst][j]);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second]) {
      xs[worst] = xr;
      fs[worst] = fr;
      continue;
    }
    const bool outside = fr < fs[worst];
    for (std::size_t j = 0; j < n; ++j) {
      xc[j] = outside ? centroid[j] + 0.5 * (centroid[j] - xs[worst][j])
                      : centroid[j] - 0.5 * (centroid[j] - xs[worst][j]);
    }
    const double fc = f(xc);
    ++evals;
    if (fc < std::min(fr, fs[worst])) {
      xs[worst] = xc;
      fs[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {  // shrink toward the best vertex
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) xs[i][j] = xs[best][j] + 0.5 * (xs[i][j] - xs[best][j]);
      fs[i] = f(xs[i]);
      ++evals;
    }
  }

  sort_order();
  SimplexResult out;
  out.x = xs[order[0]];
  out.cost = fs[order[0]];
  out.evals = evals;
  out.converged = converged;
  return out;
}

const char* cost_kind_name(CostKind k) {
  switch (k) {
    case CostKind::approx_nonrobust: return "approx_nonrobust";
    case CostKind::exact_nonrobust: return "exact_nonrobust";
    case CostKind::approx_robust: return "approx_robust";
    case CostKind::exact_robust: return "exact_robust";
  }
  return "unknown";
}

std::optional<CostKind> cost_kind_from_name(const std::string& name) {
  if (name == "approx_nonrobust") return CostKind::approx_nonrobust;
  if (name == "exact_nonrobust") return CostKind::exact_nonrobust;
  if (name == "approx_robust") return CostKind::approx_robust;
  if (name == "exact_robust") return CostKind::exact_robust;
  return std::nullopt;
}

bool cost_kind_is_exact(CostKind k) {
  return k == CostKind::exact_nonrobust || k == CostKind::exact_robust;
}

bool cost_kind_is_robust(CostKind k) {
  return k == CostKind::approx_robust || k == CostKind::exact_robust;
}

namespace {

// Dimensionless size of the worst constraint violation; 0 when the protocol
// is physical. Penalized smoothly so the simplex can walk back out.
double protocol_violation(const Protocol& p, const CostSettings& cs) {
  const double wm2 = p.omega_minus_sq();
  const double beta_max = p.design().constraints.beta_max;
  double viol = 0;
  const int n = std::max(3, cs.validity_samples);
  for (int i = 0; i < n; ++i) {
    const double t = p.t_f() * static_cast<double>(i) / static_cast<double>(n - 1);
    double rho[5];
    p.rho_plus(t, rho);
    if (!(rho[0] > 0)) {
      viol = std::max(viol, 1.0 - rho[0]);
      continue;
    }
    const double w = p.omega_plus_sq(t) - wm2;
    if (!(w > 0)) {
      viol = std::max(viol, 1.0 - w / wm2);
      continue;
    }
    PotentialSnapshot snap;
    if (!p.try_at(t, snap)) {
      viol = std::max(viol, 1.0);
      continue;
    }
    if (snap.well.beta > beta_max * (1.0 + 1e-9)) {
      viol = std::max(viol, snap.well.beta / beta_max - 1.0);
    }
  }
  return viol;
}

double exact_excitation(const Protocol& p, double eta, const OdeOptions& ode) {
  const auto& c = p.design().constraints;
  const WellSchedule sched = schedule_from_protocol(p, eta);
  const WellParams w0 = sched(0.0);
  const EquilibriumPair eq0 = equilibrium_positions(w0);
  IonState s{eq0.x1, eq0.x2, 0, 0};
  s = simulate(sched, c.m1, c.m2, s, 0.0, p.t_f(), ode);
  const WellParams wf = sched(p.t_f());
  const EquilibriumPair eqf = equilibrium_positions(wf, eq0);
  return excitation_energies(wf, c.m1, c.m2, s, eqf).total();
}

}  // namespace

double evaluate_cost(const DesignBoundary& dsn, double A, double B, double t_f,
                     const CostSettings& cs) {
  if (!(t_f > 0) || !std::isfinite(t_f)) throw ConfigError("run-time must be positive");
  if (!std::isfinite(A) || !std::isfinite(B)) return cs.penalty * 2.0;
  const double bound_viol =
      std::max(std::abs(A) / cs.param_bound, std::abs(B) / cs.param_bound) - 1.0;
  if (bound_viol > 0) return cs.penalty * (1.0 + bound_viol);

  const Protocol p(dsn, A, B, t_f);
  const double viol = protocol_violation(p, cs);
  if (viol > 0) return cs.penalty * (1.0 + viol);

  try {
    double e = 0;
    if (cost_kind_is_exact(cs.kind)) {
      e = exact_excitation(p, 0.0, cs.ode);
      if (cost_kind_is_robust(cs.kind)) e += exact_excitation(p, cs.eta_design, cs.ode);
    } else {
      const AuxEnergies ae = aux_energies(p, 0.0, cs.ode);
      e = ae.stretch + ae.com;
      if (cost_kind_is_robust(cs.kind)) e += aux_energies(p, cs.eta_design, cs.ode).com;
    }
    return e / dsn.quantum();
  } catch (const NumericsError&) {
    return cs.penalty * 2.0;
  }
}

OptResult optimize_protocol(const DesignBoundary& dsn, double t_f, const CostSettings& cs,
                            bool two_param,
                            std::optional<std::pair<double, double>> warm_start,
                            const OptimizeOptions& oo) {
  auto cost_fn = [&](const std::vector<double>& v) {
    return evaluate_cost(dsn, v[0], two_param ? v[1] : 0.0, t_f, cs);
  };
  SimplexOptions so;
  so.cost_tol = oo.cost_tol_internal / dsn.quantum();
  so.param_tol = oo.param_tol;
  so.max_evals = oo.max_evals;

  OptResult best;
  best.cost = std::numeric_limits<double>::infinity();
  auto consider = [&](const SimplexResult& r) {
    best.evals += r.evals;
    if (r.cost < best.cost) {
      best.A = r.x[0];
      best.B = two_param ? r.x[1] : 0.0;
      best.cost = r.cost;
      best.converged = r.converged;
    }
  };

  {
    std::vector<double> x0{warm_start ? warm_start->first : 0.0};
    if (two_param) x0.push_back(warm_start ? warm_start->second : 0.0);
    consider(nelder_mead(cost_fn, x0, so));
  }

  if (best.cost > oo.branch_trigger && oo.branch_polish > 0) {
    // Line scan over A at B = 0. Interior minima below the penalty floor mark
    // the physical basins; polishing the best few from scratch is what lets
    // the optimizer hop between ringing branches.
    const int n =
        std::max(3, static_cast<int>(std::floor((oo.branch_hi - oo.branch_lo) / oo.branch_step)) + 1);
    std::vector<double> as(n), costs(n);
    for (int i = 0; i < n; ++i) {
      as[i] = oo.branch_lo + oo.branch_step * static_cast<double>(i);
      std::vector<double> v{as[i]};
      if (two_param) v.push_back(0.0);
      costs[i] = cost_fn(v);
      ++best.evals;
    }
    std::vector<std::pair<double, double>> basins;  // (scanned cost, A)
    for (int i = 1; i + 1 < n; ++i) {
      if (costs[i] < cs.penalty && costs[i] < costs[i - 1] && costs[i] <= costs[i + 1]) {
        basins.emplace_back(costs[i], as[i]);
      }
    }
    std::sort(basins.begin(), basins.end());
    SimplexOptions ps = so;
    ps.init_steps = {0.5 * oo.branch_step};
    if (two_param) ps.init_steps.push_back(oo.branch_B_step);
    int polished = 0;
    for (const auto& [c0, a0] : basins) {
      if (polished >= oo.branch_polish || best.cost <= oo.multistart_threshold) break;
      ++polished;
      std::vector<double> v{a0};
      if (two_param) v.push_back(0.0);
      consider(nelder_mead(cost_fn, v, ps));
    }
  }
  best.two_param = two_param;
  best.penalized = best.cost >= cs.penalty;
  return best;
}

}  // namespace ionswap
