#include "ionswap/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>

#include "ionswap/analysis.hpp"
#include "ionswap/aux_energy.hpp"
#include "ionswap/dynamics.hpp"
#include "ionswap/errors.hpp"
#include "ionswap/units.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ionswap::pipelines {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string out_path(const Context& ctx, const std::string& name) {
  return (fs::path(ctx.cfg.out_dir) / name).string();
}

void emit(const Context& ctx, json& summary, const std::string& name,
          const std::string& payload) {
  std::string path = out_path(ctx, name);
  write_file(path, payload);
  summary["files"].push_back(path);
}

void emit_json(const Context& ctx, json& summary, const std::string& name, json doc) {
  emit(ctx, summary, name, render_json(std::move(doc), ctx.meta));
}

double nan_or(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

// Canonical cache key of a per-run-time optimization sweep. Physics inputs
// only: output paths and worker counts must not invalidate records.
std::string sweep_key(const DesignBoundary& dsn, std::span<const double> grid,
                      const CostSettings& cs, bool two_param) {
  std::ostringstream k;
  const PhysicalConstraints& c = dsn.constraints;
  k << "sweep|" << format_double(c.beta_max) << '|' << format_double(c.d0) << '|'
    << format_double(c.d_in) << '|' << format_double(c.m1) << '|' << format_double(c.m2)
    << '|' << cost_kind_name(cs.kind) << '|' << format_double(cs.eta_design) << '|'
    << format_double(cs.penalty) << '|' << format_double(cs.param_bound) << '|'
    << cs.validity_samples << '|' << format_double(cs.ode.rel_tol) << '|'
    << format_double(cs.ode.abs_tol) << '|' << (two_param ? 2 : 1) << "|grid:";
  for (double t : grid) k << format_double(t) << ',';
  return k.str();
}

json sweep_to_json(const RuntimeSweep& sweep) {
  json points = json::array();
  for (const SweepPoint& p : sweep.points) {
    points.push_back(json{{"t_f", p.t_f},
                          {"A", p.opt.A},
                          {"B", p.opt.B},
                          {"cost", finite_or_null(p.opt.cost)},
                          {"evals", p.opt.evals},
                          {"two_param", p.opt.two_param},
                          {"converged", p.opt.converged},
                          {"penalized", p.opt.penalized},
                          {"e_ground", finite_or_null(p.e_ground)},
                          {"flagged", p.flagged}});
  }
  return json{{"points", std::move(points)}};
}

RuntimeSweep sweep_from_json(const json& doc) {
  RuntimeSweep sweep;
  for (const json& p : doc.at("points")) {
    SweepPoint sp;
    sp.t_f = p.at("t_f").get<double>();
    sp.opt.A = p.at("A").get<double>();
    sp.opt.B = p.at("B").get<double>();
    sp.opt.cost = nan_or(p.at("cost"));
    sp.opt.evals = p.at("evals").get<int>();
    sp.opt.two_param = p.at("two_param").get<bool>();
    sp.opt.converged = p.at("converged").get<bool>();
    sp.opt.penalized = p.at("penalized").get<bool>();
    sp.e_ground = nan_or(p.at("e_ground"));
    sp.flagged = p.at("flagged").get<bool>();
    sweep.points.push_back(sp);
  }
  return sweep;
}

json well_json(const WellParams& w) {
  return json{{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}};
}

std::string flag_text(bool flagged) { return flagged ? "1" : "0"; }

// Shared by cool/resonance/scale: sweep the configured window and locate the
// phase-averaged swap minimum.
struct CoolingOutcome {
  RuntimeSweep sweep;
  CoolingScan scan;
};

CoolingOutcome cooling_outcome(const Context& ctx, const DesignBoundary& dsn,
                               std::span<const double> grid, const CostSettings& cs,
                               bool two_param) {
  CoolingOutcome out;
  out.sweep = cached_sweep(ctx, dsn, grid, cs, two_param);
  out.scan = find_cooling_time(dsn, out.sweep, ctx.cfg.e_in, ctx.cfg.hot_ion,
                               ctx.cfg.n_phases, ctx.cfg.jobs, ctx.cfg.ode_options(),
                               ctx.cfg.cooling_target);
  return out;
}

json cooling_json(const Context& ctx, const DesignBoundary& dsn, const RuntimeSweep& sweep,
                  const CoolingScan& scan) {
  json doc{{"found", scan.found},
           {"target_quanta", ctx.cfg.cooling_target},
           {"e_in_quanta", ctx.cfg.e_in},
           {"n_phases", ctx.cfg.n_phases},
           {"hot_ion", ctx.cfg.hot_ion},
           {"t_c_us", finite_or_null(scan.t_c)},
           {"t_c_cycles", finite_or_null(scan.found ? cycles_from_time(dsn, scan.t_c)
                                                    : std::numeric_limits<double>::quiet_NaN())},
           {"e_min_quanta", finite_or_null(scan.e_min)}};
  if (scan.min_index >= 0) {
    const SweepPoint& p = sweep.points[static_cast<size_t>(scan.min_index)];
    doc["min_point"] = json{{"t_f_us", p.t_f}, {"A", p.opt.A}, {"B", p.opt.B},
                            {"cost_quanta", finite_or_null(p.opt.cost)}};
  }
  return doc;
}

std::string cooling_csv(const Context& ctx, const CoolingScan& scan) {
  CsvBuilder csv(ctx.meta, {"t_f_us", "e_hot_quanta", "flag"});
  csv.comment("phase-averaged final hot-ion energy per optimized run-time");
  for (size_t i = 0; i < scan.t_f.size(); ++i) {
    bool bad = !std::isfinite(scan.e_hot[i]);
    csv.row({format_double(scan.t_f[i]), bad ? "" : format_double(scan.e_hot[i]),
             flag_text(bad)});
  }
  return csv.str();
}

std::string ratio_tag(double r) {
  std::string s = format_double(r);
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

const SweepPoint& scan_minimum(const RuntimeSweep& sweep, const CoolingScan& scan) {
  if (scan.min_index < 0) throw InfeasibleError("no swap minimum inside the scan window");
  return sweep.points[static_cast<size_t>(scan.min_index)];
}

json lorentz_json(const Context& ctx, const DesignBoundary& dsn, const LorentzFit& fit) {
  double tol_target = tolerable_eta(fit.eta_half, ctx.cfg.cooling_target, ctx.cfg.e_in);
  double tol_one = tolerable_eta(fit.eta_half, 1.0, ctx.cfg.e_in);
  return json{{"ok", fit.ok},
              {"k", fit.k},
              {"eta_half", fit.eta_half},
              {"rel_rms", fit.rel_rms},
              {"n_used", fit.n_used},
              {"tolerable_eta_at_target", finite_or_null(tol_target)},
              {"tolerable_eta_at_one_quantum", finite_or_null(tol_one)},
              {"gamma_half_V_per_m",
               stray_gamma(dsn, fit.eta_half) / units::unit_factor("V/m")}};
}

}  // namespace

Context::Context(RunConfig c)
    : cfg(std::move(c)),
      store(ResultStore::from_config(cfg.cache_dir)),
      meta(make_metadata(cfg.physics_hash())) {}

std::vector<double> symmetric_grid(double max_abs, int n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  if (n == 1) return {0.0};
  std::vector<double> g(static_cast<size_t>(n));
  double step = 2.0 * max_abs / (n - 1);
  if (n % 2 == 1) {
    // build from the centre outwards so eta = 0 is exact
    int mid = (n - 1) / 2;
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = (i - mid) * step;
    g[static_cast<size_t>(mid)] = 0.0;
  } else {
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = -max_abs + i * step;
    g.back() = max_abs;
  }
  return g;
}

json design_json(const DesignBoundary& dsn) {
  const PhysicalConstraints& c = dsn.constraints;
  double cycle = kTwoPi / dsn.omega0;
  return json{
      {"constraints",
       json{{"beta_max_N_per_m3", c.beta_max / units::unit_factor("N/m^3")},
            {"beta_max_internal", c.beta_max},
            {"d0_um", c.d0},
            {"d_in_um", c.d_in},
            {"m1_amu", c.m1},
            {"m2_amu", c.m2}}},
      {"d_c_um", dsn.d_c},
      {"outer", well_json(dsn.outer)},
      {"waist", well_json(dsn.waist)},
      {"s_outer_um", dsn.s_outer},
      {"s_waist_um", dsn.s_waist},
      {"omega_minus_rad_per_us", dsn.omega_minus},
      {"omega0_plus_rad_per_us", dsn.omega0_plus},
      {"omega_in_plus_rad_per_us", dsn.omega_in_plus},
      {"rho_in_plus", dsn.rho_in_plus},
      {"omega0_rad_per_us", dsn.omega0},
      {"omega0_over_2pi_MHz", dsn.omega0 / kTwoPi},
      {"trap_period_us", cycle},
      {"exchange_rate_rad_per_us", dsn.exchange_rate},
      {"exchange_time_us", dsn.exchange_time},
      {"exchange_time_cycles", dsn.exchange_time / cycle},
      {"quantum_internal", dsn.quantum()}};
}

json protocol_json(const DesignBoundary& dsn, double A, double B, double t_f, int samples) {
  Protocol p(dsn, A, B, t_f);
  json t = json::array(), alpha = json::array(), beta = json::array(),
       gamma = json::array(), d = json::array(), s = json::array();
  for (int i = 0; i < samples; ++i) {
    double ti = t_f * i / (samples - 1);
    PotentialSnapshot snap = p.at(ti);
    t.push_back(ti);
    alpha.push_back(snap.well.alpha);
    beta.push_back(snap.well.beta);
    gamma.push_back(snap.well.gamma);
    d.push_back(snap.d);
    s.push_back(snap.s);
  }
  return json{{"design", design_json(dsn)},
              {"A", A},
              {"B", B},
              {"t_f_us", t_f},
              {"samples", samples},
              {"units",
               json{{"t", "us"},
                    {"alpha", "amu/us^2"},
                    {"beta", "amu/(um^2*us^2)"},
                    {"gamma", "amu*um/us^2"},
                    {"d", "um"},
                    {"s", "um"}}},
              {"t", std::move(t)},
              {"alpha", std::move(alpha)},
              {"beta", std::move(beta)},
              {"gamma", std::move(gamma)},
              {"d", std::move(d)},
              {"s", std::move(s)}};
}

std::string trajectory_csv(const Context& ctx, const Protocol& p, double eta) {
  const DesignBoundary& dsn = p.design();
  double m1 = dsn.constraints.m1, m2 = dsn.constraints.m2;
  WellSchedule sched = schedule_from_protocol(p, eta);
  WellParams w0 = sched(0.0);
  EquilibriumPair eq0 = equilibrium_positions(w0);
  IonState state{eq0.x1, eq0.x2, 0.0, 0.0};

  int n = ctx.cfg.samples;
  std::vector<double> times(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) times[static_cast<size_t>(i)] = p.t_f() * i / (n - 1);

  CsvBuilder csv(ctx.meta,
                 {"t_us", "x1_um", "x2_um", "p1_amu_um_per_us", "p2_amu_um_per_us",
                  "E_ex_1_quanta", "E_ex_2_quanta"});
  csv.comment("ground-state pair driven through the protocol, eta = " + format_double(eta));
  double quantum = dsn.quantum();
  EquilibriumPair eq = eq0;
  auto on_sample = [&](double t, const IonState& st) {
    WellParams w = sched(t);
    eq = equilibrium_positions(w, eq);
    ExcitationEnergies ee = excitation_energies(w, m1, m2, st, eq);
    csv.row_values({t, st.x1, st.x2, st.p1, st.p2, ee.ion1 / quantum, ee.ion2 / quantum});
  };
  simulate_sampled(sched, m1, m2, state, 0.0, p.t_f(), times, on_sample,
                   ctx.cfg.ode_options());
  return csv.str();
}

RuntimeSweep cached_sweep(const Context& ctx, const DesignBoundary& dsn,
                          std::span<const double> t_f_grid, const CostSettings& cs,
                          bool two_param) {
  std::string key = sweep_key(dsn, t_f_grid, cs, two_param);
  if (auto hit = ctx.store.get(key)) {
    try {
      return sweep_from_json(json::parse(*hit));
    } catch (const json::exception& e) {
      throw NumericsError("corrupt cache record " + ctx.store.path_for(key) + ": " + e.what());
    }
  }
  RuntimeSweep sweep = runtime_sweep(dsn, t_f_grid, cs, two_param, ctx.cfg.jobs);
  ctx.store.put(key, sweep_to_json(sweep).dump(2) + "\n");
  return sweep;
}

json cmd_design(const Context& ctx) {
  DesignBoundary dsn = solve_boundaries(ctx.cfg.constraints);
  json summary{{"command", "design"}, {"files", json::array()}};
  json doc = design_json(dsn);
  emit_json(ctx, summary, "design.json", doc);
  summary["design"] = std::move(doc);
  return summary;
}

json cmd_optimize(const Context& ctx) {
  DesignBoundary dsn = solve_boundaries(ctx.cfg.constraints);
  CostSettings cs = ctx.cfg.cost_settings();
  OptResult opt = optimize_protocol(dsn, ctx.cfg.t_f, cs, ctx.cfg.two_param);

  Protocol p(dsn, opt.A, opt.B, ctx.cfg.t_f);
  GroundPoint ground = ground_excitations(p, 0.0, cs.ode);
  json doc{{"t_f_us", ctx.cfg.t_f},
           {"cost_kind", cost_kind_name(cs.kind)},
           {"two_param", opt.two_param},
           {"A", opt.A},
           {"B", opt.B},
           {"cost_quanta", finite_or_null(opt.cost)},
           {"evals", opt.evals},
           {"converged", opt.converged},
           {"penalized", opt.penalized},
           {"beta_overshoot", p.beta_overshoot()},
           {"ground_excitation_quanta",
            json{{"ion1", finite_or_null(ground.e1)}, {"ion2", finite_or_null(ground.e2)}}}};
  if (dsn.constraints.equal_masses()) {
    AuxEnergies aux = aux_energies(p, 0.0, cs.ode);
    doc["auxiliary_quanta"] = json{{"stretch", aux.stretch / dsn.quantum()},
                                   {"com", aux.com / dsn.quantum()}};
  }

  json summary{{"command", "optimize"}, {"files", json::array()}};
  emit_json(ctx, summary, "optimize.json", doc);
  emit_json(ctx, summary, "protocol.json",
            protocol_json(dsn, opt.A, opt.B, ctx.cfg.t_f, ctx.cfg.samples));
  if (ctx.cfg.trajectory) {
    emit(ctx, summary, "trajectory.csv", trajectory_csv(ctx, p, 0.0));
  }
  summary["result"] = std::move(doc);
  return summary;
}

json cmd_sweep(const Context& ctx) {
  DesignBoundary dsn = solve_boundaries(ctx.cfg.constraints);
  CostSettings cs = ctx.cfg.cost_settings();
  std::vector<double> grid = linspace_step(ctx.cfg.t_f_min, ctx.cfg.t_f_max, ctx.cfg.t_f_step);
  RuntimeSweep sweep = cached_sweep(ctx, dsn, grid, cs, ctx.cfg.two_param);

  json summary{{"command", "sweep"}, {"files", json::array()}};

  // eta = 0 slice with both ion energies
  std::vector<double> zero{0.0};
  SweepGrid slice = robustness_grid(dsn, sweep, zero, 0.0, ctx.cfg.hot_ion,
                                    ctx.cfg.n_phases, ctx.cfg.jobs, cs.ode);
  {
    CsvBuilder csv(ctx.meta, {"t_f_us", "eta", "E_ex_1_quanta", "E_ex_2_quanta", "flag"});
    csv.comment("cost " + std::string(cost_kind_name(cs.kind)) +
                (ctx.cfg.two_param ? ", two free parameters" : ", one free parameter"));
    for (size_t i = 0; i < slice.t_f.size(); ++i) {
      bool bad = !std::isfinite(slice.at1(i, 0));
      csv.row({format_double(slice.t_f[i]), "0", bad ? "" : format_double(slice.at1(i, 0)),
               bad ? "" : format_double(slice.at2(i, 0)), flag_text(bad)});
    }
    emit(ctx, summary, "sweep.csv", csv.str());
  }
  {
    CsvBuilder csv(ctx.meta,
                   {"t_f_us", "A", "B", "cost_quanta", "evals", "converged", "penalized"});
    for (const SweepPoint& p : sweep.points) {
      csv.row({format_double(p.t_f), format_double(p.opt.A), format_double(p.opt.B),
               std::isfinite(p.opt.cost) ? format_double(p.opt.cost) : "",
               std::to_string(p.opt.evals), flag_text(p.opt.converged),
               flag_text(p.opt.penalized)});
    }
    emit(ctx, summary, "sweep_params.csv", csv.str());
  }

  // envelope of the ground-state excitation
  std::vector<double> t = sweep.t_f_grid(), e = sweep.e_ground_curve();
  EnvelopeFit fit = fit_envelope(t, e, ctx.cfg.cooling_target);
  json fit_doc{{"ok", fit.ok},
               {"a", fit.a},
               {"b", fit.b},
               {"c", fit.c},
               {"d", fit.d},
               {"t_crit_us", finite_or_null(fit.t_crit)},
               {"t_crit_cycles",
                finite_or_null(fit.ok ? cycles_from_time(dsn, fit.t_crit)
                                      : std::numeric_limits<double>::quiet_NaN())},
               {"median_peak_residual", fit.median_peak_residual},
               {"n_used", fit.n_used},
               {"threshold_quanta", ctx.cfg.cooling_target}};
  emit_json(ctx, summary, "envelope.json", fit_doc);

  if (ctx.cfg.grid) {
    std::vector<double> etas = symmetric_grid(ctx.cfg.eta_max, ctx.cfg.eta_points);
    SweepGrid full = robustness_grid(dsn, sweep, etas, 0.0, ctx.cfg.hot_ion,
                                     ctx.cfg.n_phases, ctx.cfg.jobs, cs.ode);
    CsvBuilder csv(ctx.meta, {"t_f_us", "eta", "E_ex_1_quanta", "E_ex_2_quanta", "flag"});
    for (size_t i = 0; i < full.t_f.size(); ++i) {
      for (size_t j = 0; j < full.eta.size(); ++j) {
        bool bad = !std::isfinite(full.at1(i, j));
        csv.row({format_double(full.t_f[i]), format_double(full.eta[j]),
                 bad ? "" : format_double(full.at1(i, j)),
                 bad ? "" : format_double(full.at2(i, j)), flag_text(bad)});
      }
    }
    emit(ctx, summary, "sweep_grid.csv", csv.str());
  }

  summary["envelope"] = std::move(fit_doc);
  return summary;
}

json cmd_cool(const Context& ctx) {
  DesignBoundary dsn = solve_boundaries(ctx.cfg.constraints);
  CostSettings cs = ctx.cfg.cost_settings();
  std::vector<double> grid = linspace_step(ctx.cfg.t_f_min, ctx.cfg.t_f_max, ctx.cfg.t_f_step);
  CoolingOutcome out = cooling_outcome(ctx, dsn, grid, cs, ctx.cfg.two_param);

  json summary{{"command", "cool"}, {"files", json::array()}};
  emit(ctx, summary, "cooling.csv", cooling_csv(ctx, out.scan));
  json doc = cooling_json(ctx, dsn, out.sweep, out.scan);
  emit_json(ctx, summary, "cooling.json", doc);
  summary["cooling"] = std::move(doc);
  return summary;
}

json cmd_resonance(const Context& ctx) {
  json summary{{"command", "resonance"}, {"files", json::array()}};
  json cuts = json::array();
  std::vector<double> etas = symmetric_grid(ctx.cfg.eta_max, ctx.cfg.eta_points);

  for (double ratio : ctx.cfg.d_in_ratios) {
    PhysicalConstraints c = ctx.cfg.constraints;
    double d_c = critical_distance(c.beta_max);
    c.d_in = ratio * d_c;
    DesignBoundary dsn = solve_boundaries(c);
    CostSettings cs = ctx.cfg.cost_settings();
    std::vector<double> grid =
        linspace_step(ctx.cfg.t_f_min, ctx.cfg.t_f_max, ctx.cfg.t_f_step);
    CoolingOutcome out = cooling_outcome(ctx, dsn, grid, cs, ctx.cfg.two_param);
    if (!out.scan.found) {
      throw InfeasibleError("no swap below the target at d_in/d_c = " +
                            format_double(ratio));
    }
    const SweepPoint& best = scan_minimum(out.sweep, out.scan);
    Protocol p(dsn, best.opt.A, best.opt.B, best.t_f);
    ResonanceCut cut = resonance_cut(p, etas, ctx.cfg.e_in, ctx.cfg.hot_ion,
                                     ctx.cfg.n_phases, ctx.cfg.jobs, cs.ode, ratio);

    CsvBuilder csv(ctx.meta, {"eta", "e_hot_quanta", "flag"});
    csv.comment("stray-field cut at t_f = " + format_double(best.t_f) +
                " us, d_in/d_c = " + format_double(ratio));
    for (size_t i = 0; i < cut.eta.size(); ++i) {
      bool bad = !std::isfinite(cut.e_hot[i]);
      csv.row({format_double(cut.eta[i]), bad ? "" : format_double(cut.e_hot[i]),
               flag_text(bad)});
    }
    emit(ctx, summary, "resonance_r" + ratio_tag(ratio) + ".csv", csv.str());

    json entry = lorentz_json(ctx, dsn, cut.fit);
    entry["d_in_ratio"] = ratio;
    entry["t_c_us"] = best.t_f;
    entry["t_c_cycles"] = cycles_from_time(dsn, best.t_f);
    cuts.push_back(std::move(entry));
  }

  json doc{{"cuts", std::move(cuts)}};
  emit_json(ctx, summary, "resonance.json", doc);
  summary["resonance"] = std::move(doc);
  return summary;
}

json cmd_scale(const Context& ctx) {
  const PhysicalConstraints& base = ctx.cfg.constraints;
  double d_c_base = critical_distance(base.beta_max);
  double r0 = base.d0 / d_c_base;
  double rin = base.d_in / d_c_base;
  std::vector<double> etas = symmetric_grid(ctx.cfg.eta_max, ctx.cfg.eta_points);
  std::vector<double> cycles =
      linspace_step(ctx.cfg.cycles_min, ctx.cfg.cycles_max, ctx.cfg.cycles_step);

  json summary{{"command", "scale"}, {"files", json::array()}};
  json cells = json::array();
  std::vector<double> betas, omega0s, d_cs, gamma_halves, t_c_cycles;

  CsvBuilder csv(ctx.meta,
                 {"beta_multiplier", "beta_max_N_per_m3", "d_c_um", "omega0_over_2pi_MHz",
                  "t_c_us", "t_c_cycles", "eta_half", "gamma_half_V_per_m"});
  csv.comment("confinement scaling at fixed d0/d_c and d_in/d_c");

  for (double mult : ctx.cfg.beta_multipliers) {
    PhysicalConstraints c = base;
    c.beta_max = mult * base.beta_max;
    double d_c = critical_distance(c.beta_max);
    c.d0 = r0 * d_c;
    c.d_in = rin * d_c;
    DesignBoundary dsn = solve_boundaries(c);
    CostSettings cs = ctx.cfg.cost_settings();
    std::vector<double> grid(cycles.size());
    for (size_t i = 0; i < cycles.size(); ++i) grid[i] = time_from_cycles(dsn, cycles[i]);
    CoolingOutcome out = cooling_outcome(ctx, dsn, grid, cs, ctx.cfg.two_param);
    if (!out.scan.found) {
      throw InfeasibleError("no swap below the target at beta multiplier " +
                            format_double(mult));
    }
    const SweepPoint& best = scan_minimum(out.sweep, out.scan);
    Protocol p(dsn, best.opt.A, best.opt.B, best.t_f);
    ResonanceCut cut = resonance_cut(p, etas, ctx.cfg.e_in, ctx.cfg.hot_ion,
                                     ctx.cfg.n_phases, ctx.cfg.jobs, cs.ode, rin);
    if (!cut.fit.ok) {
      throw NumericsError("stray-field fit failed at beta multiplier " + format_double(mult));
    }
    double gamma_half = stray_gamma(dsn, cut.fit.eta_half);
    double cyc = cycles_from_time(dsn, best.t_f);

    betas.push_back(c.beta_max);
    omega0s.push_back(dsn.omega0);
    d_cs.push_back(dsn.d_c);
    gamma_halves.push_back(gamma_half);
    t_c_cycles.push_back(cyc);

    csv.row_values({mult, c.beta_max / units::unit_factor("N/m^3"), dsn.d_c,
                    dsn.omega0 / kTwoPi, best.t_f, cyc, cut.fit.eta_half,
                    gamma_half / units::unit_factor("V/m")});
    cells.push_back(json{{"beta_multiplier", mult},
                         {"beta_max_internal", c.beta_max},
                         {"d_c_um", dsn.d_c},
                         {"omega0_rad_per_us", dsn.omega0},
                         {"t_c_us", best.t_f},
                         {"t_c_cycles", cyc},
                         {"eta_half", cut.fit.eta_half},
                         {"gamma_half_internal", gamma_half}});
  }

  double cyc_lo = *std::min_element(t_c_cycles.begin(), t_c_cycles.end());
  double cyc_hi = *std::max_element(t_c_cycles.begin(), t_c_cycles.end());
  json doc{{"cells", std::move(cells)},
           {"exponents",
            json{{"omega0", power_law_exponent(betas, omega0s)},
                 {"d_c", power_law_exponent(betas, d_cs)},
                 {"gamma_half", power_law_exponent(betas, gamma_halves)}}},
           {"t_c_cycles_spread", cyc_hi - cyc_lo},
           {"cycles_step", ctx.cfg.cycles_step}};

  emit(ctx, summary, "scale.csv", csv.str());
  emit_json(ctx, summary, "scale.json", doc);
  summary["scale"] = std::move(doc);
  return summary;
}

json cmd_unequal(const Context& ctx) {
  std::vector<double> cycles =
      linspace_step(ctx.cfg.cycles_min, ctx.cfg.cycles_max, ctx.cfg.cycles_step);
  json summary{{"command", "unequal"}, {"files", json::array()}};
  json entries = json::array();

  CsvBuilder csv(ctx.meta, {"mass_ratio", "m1_amu", "m2_amu", "omega0_over_2pi_MHz",
                            "found", "t_c_us", "t_c_cycles", "e_min_quanta"});
  csv.comment("energy swap with the coolant ion lightened, hot heavy ion first");

  for (double ratio : ctx.cfg.mass_ratios) {
    PhysicalConstraints c = with_mass_ratio(ctx.cfg.constraints, ratio);
    DesignBoundary dsn = solve_boundaries(c);
    CostSettings cs = ctx.cfg.cost_settings();
    cs.kind = CostKind::exact_nonrobust;  // stray response undefined off equal masses
    std::vector<double> grid(cycles.size());
    for (size_t i = 0; i < cycles.size(); ++i) grid[i] = time_from_cycles(dsn, cycles[i]);
    CoolingOutcome out = cooling_outcome(ctx, dsn, grid, cs, true);

    double cyc = out.scan.found ? cycles_from_time(dsn, out.scan.t_c)
                                : std::numeric_limits<double>::quiet_NaN();
    csv.row({format_double(ratio), format_double(c.m1), format_double(c.m2),
             format_double(dsn.omega0 / kTwoPi), flag_text(out.scan.found),
             out.scan.found ? format_double(out.scan.t_c) : "",
             out.scan.found ? format_double(cyc) : "",
             std::isfinite(out.scan.e_min) ? format_double(out.scan.e_min) : ""});

    json entry = cooling_json(ctx, dsn, out.sweep, out.scan);
    entry["mass_ratio"] = ratio;
    entry["m2_amu"] = c.m2;
    entry["omega0_over_2pi_MHz"] = dsn.omega0 / kTwoPi;
    entries.push_back(std::move(entry));

    emit(ctx, summary, "cooling_ratio_" + ratio_tag(ratio) + ".csv",
         cooling_csv(ctx, out.scan));
  }

  json doc{{"ratios", std::move(entries)}};
  emit(ctx, summary, "unequal.csv", csv.str());
  emit_json(ctx, summary, "unequal.json", doc);
  summary["unequal"] = std::move(doc);
  return summary;
}

json run_command(const std::string& name, const RunConfig& cfg) {
  Context ctx(cfg);
  if (name == "design") return cmd_design(ctx);
  if (name == "optimize") return cmd_optimize(ctx);
  if (name == "sweep") return cmd_sweep(ctx);
  if (name == "cool") return cmd_cool(ctx);
  if (name == "resonance") return cmd_resonance(ctx);
  if (name == "scale") return cmd_scale(ctx);
  if (name == "unequal") return cmd_unequal(ctx);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace ionswap::pipelines
