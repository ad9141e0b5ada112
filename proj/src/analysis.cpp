#include "ionswap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ionswap/dynamics.hpp"
#include "ionswap/errors.hpp"
#include "ionswap/parallel.hpp"

namespace ionswap {

namespace {

constexpr std::size_t kChunk = 16;  // warm-start chain length; fixed for determinism

}  // namespace

std::vector<double> RuntimeSweep::t_f_grid() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.t_f);
  return out;
}

std::vector<double> RuntimeSweep::e_ground_curve() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.flagged ? NAN : p.e_ground);
  return out;
}

GroundPoint ground_excitations(const Protocol& p, double eta, const OdeOptions& ode) {
  const auto& c = p.design().constraints;
  GroundPoint out;
  try {
    const WellSchedule sched = schedule_from_protocol(p, eta);
    const WellParams w0 = sched(0.0);
    const EquilibriumPair eq0 = equilibrium_positions(w0);
    IonState s{eq0.x1, eq0.x2, 0, 0};
    s = simulate(sched, c.m1, c.m2, s, 0.0, p.t_f(), ode);
    const WellParams wf = sched(p.t_f());
    const EquilibriumPair eqf = equilibrium_positions(wf, eq0);
    const ExcitationEnergies e = excitation_energies(wf, c.m1, c.m2, s, eqf);
    const double q = p.design().quantum();
    out.e1 = e.ion1 / q;
    out.e2 = e.ion2 / q;
  } catch (const NumericsError&) {
    out.flagged = true;
  }
  return out;
}

double hot_mean_final(const Protocol& p, double eta, double e_in, int hot_ion,
                      int n_phases, const OdeOptions& ode, double* other_mean) {
  if (n_phases < 1) throw ConfigError("need at least one motional phase");
  const auto& c = p.design().constraints;
  const double q = p.design().quantum();
  const WellSchedule sched = schedule_from_protocol(p, eta);
  const WellParams w0 = sched(0.0);
  const WellParams wf = sched(p.t_f());
  const EquilibriumPair eq0 = equilibrium_positions(w0);
  const EquilibriumPair eqf = equilibrium_positions(wf, eq0);
  double sum_hot = 0, sum_other = 0;
  for (int k = 0; k < n_phases; ++k) {
    const double phi = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n_phases);
    IonState s = prepare_state(w0, c.m1, c.m2, hot_ion, e_in * q, phi);
    s = simulate(sched, c.m1, c.m2, s, 0.0, p.t_f(), ode);
    const ExcitationEnergies e = excitation_energies(wf, c.m1, c.m2, s, eqf);
    sum_hot += (hot_ion == 1 ? e.ion1 : e.ion2) / q;
    sum_other += (hot_ion == 1 ? e.ion2 : e.ion1) / q;
  }
  if (other_mean) *other_mean = sum_other / n_phases;
  return sum_hot / n_phases;
}

RuntimeSweep runtime_sweep(const DesignBoundary& dsn, std::span<const double> t_f_grid,
                           const CostSettings& cs, bool two_param, int jobs,
                           const OptimizeOptions& oo) {
  for (std::size_t i = 1; i < t_f_grid.size(); ++i) {
    if (!(t_f_grid[i] > t_f_grid[i - 1])) throw ConfigError("run-time grid must ascend");
  }
  RuntimeSweep sweep;
  sweep.points.resize(t_f_grid.size());
  const std::size_t n_chunks = (t_f_grid.size() + kChunk - 1) / kChunk;
  parallel_for(n_chunks, jobs, [&](std::size_t chunk) {
    const std::size_t lo = chunk * kChunk;
    const std::size_t hi = std::min(lo + kChunk, t_f_grid.size());
    std::optional<std::pair<double, double>> warm;
    for (std::size_t i = lo; i < hi; ++i) {
      SweepPoint& pt = sweep.points[i];
      pt.t_f = t_f_grid[i];
      pt.opt = optimize_protocol(dsn, pt.t_f, cs, two_param, warm, oo);
      if (pt.opt.penalized) {
        pt.flagged = true;
        warm.reset();
        continue;
      }
      warm = std::make_pair(pt.opt.A, pt.opt.B);
      const Protocol proto(dsn, pt.opt.A, pt.opt.B, pt.t_f);
      const GroundPoint g = ground_excitations(proto, 0.0, cs.ode);
      pt.e_ground = g.e1;
      pt.flagged = g.flagged;
    }
  });
  return sweep;
}

SweepGrid robustness_grid(const DesignBoundary& dsn, const RuntimeSweep& sweep,
                          std::span<const double> eta_grid, double e_in, int hot_ion,
                          int n_phases, int jobs, const OdeOptions& ode) {
  SweepGrid grid;
  grid.t_f = sweep.t_f_grid();
  grid.eta.assign(eta_grid.begin(), eta_grid.end());
  grid.e1.assign(grid.t_f.size() * grid.eta.size(), NAN);
  grid.e2.assign(grid.t_f.size() * grid.eta.size(), NAN);
  parallel_for(sweep.points.size(), jobs, [&](std::size_t i) {
    const SweepPoint& pt = sweep.points[i];
    if (pt.flagged) return;
    const Protocol proto(dsn, pt.opt.A, pt.opt.B, pt.t_f);
    for (std::size_t j = 0; j < grid.eta.size(); ++j) {
      const double eta = grid.eta[j];
      try {
        if (e_in > 0) {
          double other = NAN;
          const double hot = hot_mean_final(proto, eta, e_in, hot_ion, n_phases, ode, &other);
          grid.e1[i * grid.eta.size() + j] = hot_ion == 1 ? hot : other;
          grid.e2[i * grid.eta.size() + j] = hot_ion == 1 ? other : hot;
        } else {
          const GroundPoint g = ground_excitations(proto, eta, ode);
          if (!g.flagged) {
            grid.e1[i * grid.eta.size() + j] = g.e1;
            grid.e2[i * grid.eta.size() + j] = g.e2;
          }
        }
      } catch (const NumericsError&) {
      }
    }
  });
  return grid;
}

CoolingScan find_cooling_time(const DesignBoundary& dsn, const RuntimeSweep& sweep,
                              double e_in, int hot_ion, int n_phases, int jobs,
                              const OdeOptions& ode, double target) {
  CoolingScan scan;
  scan.t_f = sweep.t_f_grid();
  scan.e_hot.assign(scan.t_f.size(), NAN);
  parallel_for(sweep.points.size(), jobs, [&](std::size_t i) {
    const SweepPoint& pt = sweep.points[i];
    if (pt.flagged) return;
    const Protocol proto(dsn, pt.opt.A, pt.opt.B, pt.t_f);
    try {
      scan.e_hot[i] = hot_mean_final(proto, 0.0, e_in, hot_ion, n_phases, ode);
    } catch (const NumericsError&) {
    }
  });

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scan.e_hot.size(); ++i) {
    if (std::isfinite(scan.e_hot[i]) && scan.e_hot[i] < best) {
      best = scan.e_hot[i];
      scan.min_index = static_cast<int>(i);
    }
  }
  if (scan.min_index < 0) return scan;
  scan.e_min = best;
  scan.found = best < target;

  const std::size_t i = static_cast<std::size_t>(scan.min_index);
  scan.t_c = scan.t_f[i];
  if (i > 0 && i + 1 < scan.t_f.size() && std::isfinite(scan.e_hot[i - 1]) &&
      std::isfinite(scan.e_hot[i + 1])) {
    // Refine on the log of the energy: swap minima are deep and narrow.
    scan.t_c = parabolic_vertex(scan.t_f[i - 1], std::log(scan.e_hot[i - 1]),
                                scan.t_f[i], std::log(std::max(scan.e_hot[i], 1e-300)),
                                scan.t_f[i + 1], std::log(scan.e_hot[i + 1]));
  }
  return scan;
}

std::vector<EnergyScanPoint> initial_energy_scan(const Protocol& p,
                                                 std::span<const double> e_in_grid,
                                                 int hot_ion, int n_phases, int jobs,
                                                 const OdeOptions& ode) {
  std::vector<EnergyScanPoint> out(e_in_grid.size());
  parallel_for(e_in_grid.size(), jobs, [&](std::size_t i) {
    out[i].e_in = e_in_grid[i];
    try {
      out[i].e_final = hot_mean_final(p, 0.0, e_in_grid[i], hot_ion, n_phases, ode);
    } catch (const NumericsError&) {
    }
  });
  return out;
}

ResonanceCut resonance_cut(const Protocol& p, std::span<const double> eta_grid,
                           double e_in, int hot_ion, int n_phases, int jobs,
                           const OdeOptions& ode, double d_ratio) {
  ResonanceCut cut;
  cut.eta.assign(eta_grid.begin(), eta_grid.end());
  cut.e_hot.assign(cut.eta.size(), NAN);
  parallel_for(cut.eta.size(), jobs, [&](std::size_t i) {
    try {
      cut.e_hot[i] = hot_mean_final(p, cut.eta[i], e_in, hot_ion, n_phases, ode);
    } catch (const NumericsError&) {
    }
  });
  cut.fit = fit_lorentzian(cut.eta, cut.e_hot, e_in, d_ratio);
  return cut;
}

double cycles_from_time(const DesignBoundary& dsn, double t) {
  return t * dsn.omega0 / (2.0 * M_PI);
}

double time_from_cycles(const DesignBoundary& dsn, double cycles) {
  return cycles * 2.0 * M_PI / dsn.omega0;
}

std::vector<double> linspace_step(double lo, double hi, double step) {
  if (!(step > 0) || !(hi >= lo)) throw ConfigError("bad grid bounds");
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + step * static_cast<double>(i);
  }
  if (!out.empty()) out.back() = std::min(out.back(), hi);
  return out;
}

}  // namespace ionswap
