#include "ionswap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "ionswap/analysis.hpp"
#include "ionswap/ansatz.hpp"
#include "ionswap/aux_energy.hpp"
#include "ionswap/dynamics.hpp"
#include "ionswap/errors.hpp"
#include "ionswap/pipelines.hpp"
#include "ionswap/protocol.hpp"
#include "ionswap/unequal.hpp"
#include "ionswap/units.hpp"

namespace ionswap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Accumulates sub-checks of one criterion; any failed sub-check fails it.
struct Gate {
  bool pass = true;
  std::string detail;

  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
  void check(bool ok, const std::string& s) {
    if (!ok) pass = false;
    note(s + (ok ? "" : " [FAIL]"));
  }
  void within(double value, double target, double tol, const std::string& label) {
    check(std::isfinite(value) && std::abs(value - target) <= tol,
          label + " = " + num(value) + " (want " + num(target) + " +- " + num(tol) + ")");
  }
  void within_rel(double value, double target, double rel, const std::string& label) {
    within(value, target, rel * std::abs(target), label);
  }
  void below(double value, double cap, const std::string& label) {
    check(std::isfinite(value) && value < cap,
          label + " = " + num(value) + " (want < " + num(cap) + ")");
  }
};

struct Runner {
  RunConfig cfg;
  AcceptanceOptions opt;
  std::vector<CriterionResult> results;

  DesignBoundary table1;
  CostSettings cs_base;

  // shared heavy artifacts
  RuntimeSweep c4_sweep;                    // exact non-robust floor scan
  std::vector<double> env_grid;             // 0.5 us run-time grid
  RuntimeSweep ex11, ex105, ex100;          // robust-exact sweeps per waist ratio
  DesignBoundary dsn105, dsn100;
  CoolingScan cool11, cool105;

  explicit Runner(RunConfig c, AcceptanceOptions o) : cfg(std::move(c)), opt(o) {
    cs_base = cfg.cost_settings();
  }

  CostSettings cost(CostKind kind) const {
    CostSettings cs = cs_base;
    cs.kind = kind;
    return cs;
  }

  DesignBoundary design_at_ratio(double d_in_ratio) const {
    PhysicalConstraints c = cfg.constraints;
    double d_c = critical_distance(c.beta_max);
    c.d_in = d_in_ratio * d_c;
    return solve_boundaries(c);
  }

  void criterion(int id, const std::string& name, const std::function<void(Gate&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Gate g;
    try {
      body(g);
    } catch (const std::exception& e) {
      g.pass = false;
      g.note(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back({id, name, g.pass, g.detail, secs});
    if (opt.progress) (*opt.progress) << criterion_line(results.back()) << std::endl;
  }

  void run();
};

double exact_excitation_of(const DesignBoundary& dsn, const OptResult& o, double t_f,
                           const OdeOptions& ode) {
  Protocol p(dsn, o.A, o.B, t_f);
  return ground_excitations(p, 0.0, ode).e1;
}

void Runner::run() {
  table1 = solve_boundaries(cfg.constraints);

  criterion(1, "critical_distance", [&](Gate& g) {
    g.within(table1.d_c, 14.0, 0.05, "d_c um");
  });

  criterion(2, "initial_curvature", [&](Gate& g) {
    g.within(table1.omega0 / kTwoPi, 0.45, 0.02, "omega0/2pi MHz");
  });

  criterion(3, "exchange_time", [&](Gate& g) {
    g.within_rel(table1.exchange_time, 442.0, 0.02, "t_e us");
    double cycles = table1.exchange_time / (kTwoPi / table1.omega0);
    g.within_rel(cycles, 200.0, 0.03, "t_e cycles");
  });

  criterion(4, "exact_shortcut_floor", [&](Gate& g) {
    std::vector<double> grid = linspace_step(15.0, 40.0, 1.0);
    c4_sweep = runtime_sweep(table1, grid, cost(CostKind::exact_nonrobust), false, opt.jobs);
    double worst = 0;
    double worst_t = 0;
    int bad = 0;
    for (const SweepPoint& p : c4_sweep.points) {
      if (p.flagged || !std::isfinite(p.e_ground)) {
        ++bad;
        continue;
      }
      if (p.e_ground > worst) {
        worst = p.e_ground;
        worst_t = p.t_f;
      }
    }
    g.check(bad == 0, std::to_string(bad) + " flagged grid points");
    g.below(worst, 1e-4, "max E_ex,1 quanta (at t_f = " + num(worst_t) + " us)");
  });

  criterion(5, "approx_vs_exact_gap", [&](Gate& g) {
    OptResult a15 = optimize_protocol(table1, 15.0, cost(CostKind::approx_nonrobust), false);
    OptResult a40 = optimize_protocol(table1, 40.0, cost(CostKind::approx_nonrobust), false);
    double e15 = exact_excitation_of(table1, a15, 15.0, cs_base.ode);
    double e40 = exact_excitation_of(table1, a40, 40.0, cs_base.ode);
    g.check(e15 > e40,
            "approximate-cost excitation grows toward short run-times (" + num(e40) +
                " -> " + num(e15) + " quanta)");
    double e_exact = NAN;
    for (const SweepPoint& p : c4_sweep.points) {
      if (p.t_f == 15.0) e_exact = p.e_ground;
    }
    double ratio = e15 / std::max(e_exact, 1e-300);
    g.check(std::isfinite(ratio) && ratio >= 1e6,
            "gap at 15 us = " + num(ratio) + "x (want >= 1e6)");
  });

  criterion(6, "critical_time_envelopes", [&](Gate& g) {
    env_grid = linspace_step(10.0, 60.0, 0.5);
    ex11 = runtime_sweep(table1, env_grid, cost(CostKind::exact_robust), true, opt.jobs);
    RuntimeSweep app11 =
        runtime_sweep(table1, env_grid, cost(CostKind::approx_robust), true, opt.jobs);
    EnvelopeFit fe = fit_envelope(ex11.t_f_grid(), ex11.e_ground_curve(), cfg.cooling_target);
    EnvelopeFit fa = fit_envelope(app11.t_f_grid(), app11.e_ground_curve(), cfg.cooling_target);
    g.check(fe.ok, "robust-exact envelope fit converged");
    g.check(fa.ok, "robust-approx envelope fit converged");
    g.within_rel(fe.t_crit, 14.2, 0.15, "T_crit,ex us");
    g.within_rel(fa.t_crit, 27.5, 0.15, "T_crit,app us");
  });

  criterion(7, "swap_cooling_solutions", [&](Gate& g) {
    cool11 = find_cooling_time(table1, ex11, cfg.e_in, cfg.hot_ion, cfg.n_phases, opt.jobs,
                               cs_base.ode, cfg.cooling_target);
    g.check(cool11.found, "swap found at d_in/d_c = 1.1");
    g.below(cool11.e_min, 0.1, "mean hot-ion floor quanta (1.1)");
    g.within_rel(cool11.t_c, 16.6, 0.05, "T_c us (1.1)");

    dsn105 = design_at_ratio(1.05);
    ex105 = runtime_sweep(dsn105, env_grid, cost(CostKind::exact_robust), true, opt.jobs);
    cool105 = find_cooling_time(dsn105, ex105, cfg.e_in, cfg.hot_ion, cfg.n_phases, opt.jobs,
                                cs_base.ode, cfg.cooling_target);
    g.check(cool105.found, "swap found at d_in/d_c = 1.05");
    g.below(cool105.e_min, 0.1, "mean hot-ion floor quanta (1.05)");
    g.within_rel(cycles_from_time(dsn105, cool105.t_c), 6.3, 0.05, "T_c cycles (1.05)");

    dsn100 = design_at_ratio(1.0);
    ex100 = runtime_sweep(dsn100, env_grid, cost(CostKind::exact_robust), true, opt.jobs);
    CoolingScan cool100 = find_cooling_time(dsn100, ex100, cfg.e_in, cfg.hot_ion,
                                            cfg.n_phases, opt.jobs, cs_base.ode,
                                            cfg.cooling_target);
    g.check(!cool100.found, "no swap below " + num(cfg.cooling_target) +
                                " quanta at d_in = d_c (floor " + num(cool100.e_min) + ")");
  });

  criterion(8, "stray_field_resonance", [&](Gate& g) {
    if (!cool11.found || !cool105.found) {
      g.check(false, "needs the swap solutions of the previous criterion");
      return;
    }
    std::vector<double> etas = pipelines::symmetric_grid(0.05, 41);
    struct Case {
      const DesignBoundary& dsn;
      const RuntimeSweep& sweep;
      const CoolingScan& scan;
      double ratio, eta_half_ref, tol_ref;
    };
    Case cases[2] = {{dsn105, ex105, cool105, 1.05, 0.048, 0.0048},
                     {table1, ex11, cool11, 1.10, 0.038, 0.0038}};
    for (const Case& c : cases) {
      const SweepPoint& best = c.sweep.points[static_cast<size_t>(c.scan.min_index)];
      Protocol p(c.dsn, best.opt.A, best.opt.B, best.t_f);
      ResonanceCut cut = resonance_cut(p, etas, cfg.e_in, cfg.hot_ion, cfg.n_phases,
                                       opt.jobs, cs_base.ode, c.ratio);
      std::string tag = " (" + num(c.ratio) + ")";
      g.check(cut.fit.ok, "resonance fit converged" + tag);
      g.check(cut.fit.k >= 0.64 && cut.fit.k <= 0.72,
              "k" + tag + " = " + num(cut.fit.k) + " (want 0.64..0.72)");
      g.within_rel(cut.fit.eta_half, c.eta_half_ref, 0.10, "eta_half" + tag);
      double tol = tolerable_eta(cut.fit.eta_half, cfg.cooling_target, cfg.e_in);
      g.within_rel(tol, c.tol_ref, 0.10, "tolerable eta" + tag);
    }
  });

  criterion(9, "confinement_scaling", [&](Gate& g) {
    std::vector<double> cyc_grid = linspace_step(5.0, 10.0, 0.25);
    std::vector<double> etas = pipelines::symmetric_grid(0.05, 41);
    std::vector<double> betas, omega0s, d_cs, gamma_halves, t_c_cycles;
    for (double mult : cfg.beta_multipliers) {
      PhysicalConstraints c = cfg.constraints;
      c.beta_max = mult * cfg.constraints.beta_max;
      double d_c = critical_distance(c.beta_max);
      c.d0 = 5.0 * d_c;
      c.d_in = 1.1 * d_c;
      DesignBoundary dsn = solve_boundaries(c);
      std::vector<double> grid(cyc_grid.size());
      for (size_t i = 0; i < grid.size(); ++i) grid[i] = time_from_cycles(dsn, cyc_grid[i]);
      RuntimeSweep sweep =
          runtime_sweep(dsn, grid, cost(CostKind::exact_robust), true, opt.jobs);
      CoolingScan scan = find_cooling_time(dsn, sweep, cfg.e_in, cfg.hot_ion, cfg.n_phases,
                                           opt.jobs, cs_base.ode, cfg.cooling_target);
      if (!scan.found) {
        g.check(false, "no swap at beta multiplier " + num(mult));
        return;
      }
      const SweepPoint& best = sweep.points[static_cast<size_t>(scan.min_index)];
      Protocol p(dsn, best.opt.A, best.opt.B, best.t_f);
      ResonanceCut cut = resonance_cut(p, etas, cfg.e_in, cfg.hot_ion, cfg.n_phases,
                                       opt.jobs, cs_base.ode, 1.1);
      if (!cut.fit.ok) {
        g.check(false, "resonance fit failed at beta multiplier " + num(mult));
        return;
      }
      betas.push_back(c.beta_max);
      omega0s.push_back(dsn.omega0);
      d_cs.push_back(dsn.d_c);
      gamma_halves.push_back(stray_gamma(dsn, cut.fit.eta_half));
      t_c_cycles.push_back(cycles_from_time(dsn, scan.t_c));
    }
    double lo = *std::min_element(t_c_cycles.begin(), t_c_cycles.end());
    double hi = *std::max_element(t_c_cycles.begin(), t_c_cycles.end());
    g.check(hi - lo <= 0.25 + 1e-12,
            "T_c spread = " + num(hi - lo) + " cycles (want <= one grid step 0.25)");
    g.within(power_law_exponent(betas, omega0s), 0.300, 0.01, "omega0 exponent");
    g.within(power_law_exponent(betas, d_cs), -0.200, 0.01, "d_c exponent");
    g.within(power_law_exponent(betas, gamma_halves), 0.400, 0.01, "gamma_half exponent");
  });

  criterion(10, "unequal_mass_swap", [&](Gate& g) {
    // general boundary solve degenerates to the symmetric one
    DesignBoundary via_general = solve_boundaries_unequal(cfg.constraints);
    auto rel = [](double a, double b) {
      double scale = std::max(std::abs(a), std::abs(b));
      return scale == 0 ? 0.0 : std::abs(a - b) / scale;
    };
    double worst = 0;
    worst = std::max(worst, rel(via_general.omega_minus, table1.omega_minus));
    worst = std::max(worst, rel(via_general.omega0_plus, table1.omega0_plus));
    worst = std::max(worst, rel(via_general.omega_in_plus, table1.omega_in_plus));
    worst = std::max(worst, rel(via_general.omega0, table1.omega0));
    worst = std::max(worst, rel(via_general.outer.alpha, table1.outer.alpha));
    worst = std::max(worst, rel(via_general.outer.beta, table1.outer.beta));
    worst = std::max(worst, rel(via_general.waist.alpha, table1.waist.alpha));
    worst = std::max(worst, rel(via_general.waist.beta, table1.waist.beta));
    worst = std::max(worst, std::abs(via_general.s_outer) / table1.constraints.d0);
    worst = std::max(worst, std::abs(via_general.s_waist) / table1.constraints.d_in);
    // near-equal masses land within the same tolerance of the symmetric design
    PhysicalConstraints near = cfg.constraints;
    near.m2 = near.m1 * (1.0 + 1e-12);
    DesignBoundary dsn_near = solve_boundaries(near);
    worst = std::max(worst, rel(dsn_near.omega0, table1.omega0));
    worst = std::max(worst, rel(dsn_near.omega_minus, table1.omega_minus));
    worst = std::max(worst, rel(dsn_near.omega_in_plus, table1.omega_in_plus));
    // symmetric-path and general-path reconstructions agree along a protocol
    Protocol probe(table1, 5.0, 1e3, 30.0);
    for (int i = 0; i <= 100; ++i) {
      double t = 30.0 * i / 100;
      double rho[5];
      probe.rho_plus(t, rho);
      ModeEvolution me = mode_evolution(table1, rho);
      PotentialSnapshot a, b;
      if (!reconstruct_equal(table1, me, a) || !reconstruct_general(table1, me, b)) {
        g.check(false, "reconstruction failed at t = " + num(t));
        return;
      }
      worst = std::max(worst, rel(a.well.alpha, b.well.alpha));
      worst = std::max(worst, rel(a.well.beta, b.well.beta));
      worst = std::max(worst, rel(a.d, b.d));
      double force_scale = cfg.constraints.m1 * table1.omega0 * table1.omega0 * a.d;
      worst = std::max(worst, std::abs(b.well.gamma) / force_scale);
      worst = std::max(worst, std::abs(b.s) / a.d);
    }
    g.check(worst <= 1e-9, "equal-mass-limit deviation = " + num(worst) + " (want <= 1e-9)");

    // reference quantum for the 2:1 pair; the published 0.55 MHz figure uses
    // a wider waist (1.25 d_c) than the rest of this suite
    PhysicalConstraints wide = with_mass_ratio(cfg.constraints, 2.0);
    wide.d_in = 1.25 * critical_distance(wide.beta_max);
    g.within(solve_boundaries(wide).omega0 / kTwoPi, 0.55, 0.02, "omega0/2pi MHz at ratio 2");

    // one free parameter saturates, the second one restores the shortcut
    DesignBoundary dsn2 = solve_boundaries(with_mass_ratio(cfg.constraints, 2.0));
    CostSettings cs_un = cost(CostKind::exact_nonrobust);
    bool floor_found = false;
    double t_show = 0, one_show = 0, two_show = 0;
    for (double cyc = 3.0; cyc <= 8.01 && !floor_found; cyc += 0.5) {
      double t_f = time_from_cycles(dsn2, cyc);
      OptResult one = optimize_protocol(dsn2, t_f, cs_un, false);
      if (!(one.cost > 0.1)) continue;
      OptResult two = optimize_protocol(dsn2, t_f, cs_un, true,
                                        std::make_pair(one.A, 0.0));
      t_show = t_f;
      one_show = one.cost;
      two_show = two.cost;
      if (two.cost < 1e-3) floor_found = true;
    }
    g.check(floor_found, "two-parameter floor at t_f = " + num(t_show) + " us: one-param " +
                             num(one_show) + " -> two-param " + num(two_show) + " quanta");

    // full swap search per mass ratio
    CostSettings cs_cool = cost(CostKind::exact_nonrobust);
    double prev_tc = std::numeric_limits<double>::infinity();
    bool monotone = true;
    std::string tcs;
    for (double ratio : cfg.mass_ratios) {
      MassRatioCooling mrc = cooling_for_ratio(cfg.constraints, ratio, 3.0, 14.0, 0.25,
                                               cs_cool, cfg.e_in, cfg.n_phases, opt.jobs);
      g.check(mrc.cooling.found, "swap found at ratio " + num(ratio));
      if (!mrc.cooling.found) return;
      g.below(mrc.cooling.e_min, 0.1, "hot-ion floor quanta (ratio " + num(ratio) + ")");
      if (!(mrc.cooling.t_c < prev_tc)) monotone = false;
      prev_tc = mrc.cooling.t_c;
      if (!tcs.empty()) tcs += ", ";
      tcs += num(mrc.cooling.t_c);
    }
    g.check(monotone, "T_c strictly decreasing in ratio (us: " + tcs + ")");
  });

  criterion(11, "property_suite", [&](Gate& g) {
    // long-horizon conservation in the frozen outer potential
    {
      OdeOptions tight;
      tight.rel_tol = 1e-12;
      tight.abs_tol = 1e-14;
      WellParams w = table1.outer;
      EquilibriumPair eq = equilibrium_positions(w);
      IonState s0{eq.x1 + 0.4, eq.x2 + 0.25, 0.0, 0.0};
      double m = cfg.constraints.m1;
      double horizon = 200.0 * kTwoPi / table1.omega0;
      WellSchedule frozen = [w](double) { return w; };
      IonState s1 = simulate(frozen, m, m, s0, 0.0, horizon, tight);
      double e0 = total_energy(w, m, m, s0);
      double e1 = total_energy(w, m, m, s1);
      g.check(std::abs(e1 - e0) / std::abs(e0) < 1e-9,
              "energy drift over 200 cycles = " + num(std::abs(e1 - e0) / std::abs(e0)));
    }
    // symmetric protocols excite both ions identically
    {
      Protocol p(table1, 0.0, 0.0, 30.0);
      GroundPoint ground = ground_excitations(p, 0.0, cs_base.ode);
      double scale = std::max({std::abs(ground.e1), std::abs(ground.e2), 1e-6});
      g.check(std::abs(ground.e1 - ground.e2) / scale < 1e-9,
              "symmetric run |E1 - E2|/E = " + num(std::abs(ground.e1 - ground.e2) / scale));
    }
    // ansatz boundary conditions at machine precision for random parameters
    {
      std::mt19937_64 rng(20260819ull);
      std::uniform_real_distribution<double> par(-1e6, 1e6);
      double worst = 0;
      for (int i = 0; i < 1000; ++i) {
        StretchAnsatz an(table1.rho_in_plus, par(rng), par(rng));
        // per-derivative magnitude bounds of the polynomial at the edge
        // (u = 1/2), for roundoff-aware tolerances
        double magd[5] = {0, 0, 0, 0, 0};
        const auto& c = an.coefficients();
        for (int j = 0; j < 8; ++j) {
          for (int k = 0; k <= 4; ++k) {
            int p = 2 * j;
            if (p < k) continue;
            double ff = 1;
            for (int q = 0; q < k; ++q) ff *= p - q;
            magd[k] += std::abs(c[static_cast<size_t>(j)]) * ff * std::pow(0.5, p - k);
          }
        }
        auto tol = [&](int k) {
          return 200.0 * std::numeric_limits<double>::epsilon() * std::max(magd[k], 1.0);
        };
        for (double s : {0.0, 1.0}) {
          double out[5];
          an.eval_s(s, out);
          worst = std::max(worst, std::abs(out[0] - 1.0) / tol(0));
          for (int k = 1; k <= 4; ++k) worst = std::max(worst, std::abs(out[k]) / tol(k));
        }
        double mid[5];
        an.eval_s(0.5, mid);
        worst = std::max(worst, std::abs(mid[0] - table1.rho_in_plus) / tol(0));
      }
      g.check(worst <= 1.0,
              "boundary conditions within roundoff budget (worst = " + num(worst) + ")");
    }
    // built potentials reproduce the designed mode frequencies
    {
      Protocol p(table1, 0.0, 0.0, 30.0);
      double m = cfg.constraints.m1;
      double worst = 0;
      for (int i = 0; i <= 100; ++i) {
        PotentialSnapshot snap = p.at(30.0 * i / 100);
        EquilibriumPair eq = equilibrium_positions(snap.well);
        MassWeightedHessian k = mass_weighted_hessian(snap.well, m, m, eq);
        auto [lo, hi] = symmetric_eigenvalues(k.k11, k.k12, k.k22);
        worst = std::max(worst, std::abs(lo - snap.omega_minus_sq) / snap.omega_minus_sq);
        worst = std::max(worst, std::abs(hi - snap.omega_plus_sq) / snap.omega_plus_sq);
      }
      g.check(worst <= 1e-9, "Hessian eigenvalue deviation = " + num(worst));
    }
    // quintic solve against plain bisection
    {
      std::mt19937_64 rng(77001ull);
      std::uniform_real_distribution<double> logb(-1.0, 1.0), amag(-1.0, 1.0);
      double alpha_scale = units::coulomb_coupling / std::pow(table1.d_c, 3);
      double worst = 0;
      for (int i = 0; i < 25; ++i) {
        double beta = cfg.constraints.beta_max * std::pow(10.0, logb(rng));
        double alpha = amag(rng) * alpha_scale;
        double d = equilibrium_distance(alpha, beta);
        auto f = [&](double x) {
          return beta * std::pow(x, 5) + 2.0 * alpha * std::pow(x, 3) -
                 2.0 * units::coulomb_coupling;
        };
        double lo = 1e-3, hi = 2.0 * table1.d_c;
        while (f(hi) < 0) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
          double mid = 0.5 * (lo + hi);
          (f(mid) < 0 ? lo : hi) = mid;
        }
        worst = std::max(worst, std::abs(d - 0.5 * (lo + hi)) / d);
      }
      g.check(worst <= 1e-10, "quintic root vs bisection = " + num(worst));
    }
    // simplex against golden section in one dimension
    {
      auto f1 = [](double x) {
        double u = x - 1.234;
        return 3.0 + u * u + 0.05 * u * u * u * u;
      };
      double a = -4.0, b = 6.0;
      const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
      double f_1 = f1(x1), f_2 = f1(x2);
      for (int it = 0; it < 200; ++it) {
        if (f_1 < f_2) {
          b = x2;
          x2 = x1;
          f_2 = f_1;
          x1 = b - phi * (b - a);
          f_1 = f1(x1);
        } else {
          a = x1;
          x1 = x2;
          f_1 = f_2;
          x2 = a + phi * (b - a);
          f_2 = f1(x2);
        }
      }
      double golden = 0.5 * (a + b);
      SimplexResult nm = nelder_mead(
          [&](const std::vector<double>& x) { return f1(x[0]); }, {0.0});
      g.check(std::abs(nm.x[0] - golden) <= 1e-3,
              "simplex vs golden section: " + num(nm.x[0]) + " vs " + num(golden));
    }
  });
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, const AcceptanceOptions& opt) {
  Runner r(cfg, opt);
  r.run();
  return r.results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

std::string criterion_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "[%2d] %s %-24s (%.1f s): ", r.id,
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
  return head + r.detail;
}

nlohmann::json acceptance_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CriterionResult& r : results) {
    arr.push_back(nlohmann::json{{"id", r.id},
                                 {"name", r.name},
                                 {"pass", r.pass},
                                 {"detail", r.detail},
                                 {"seconds", r.seconds}});
  }
  return nlohmann::json{{"criteria", std::move(arr)},
                        {"all_passed", all_passed(results)}};
}

}  // namespace ionswap
