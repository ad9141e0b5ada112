#include "ionswap/config.hpp"

#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

#include "ionswap/errors.hpp"
#include "ionswap/store.hpp"
#include "ionswap/units.hpp"

namespace ionswap {

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Ordered key -> raw value map of the text, later assignments winning.
std::map<std::string, std::string> raw_pairs(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::string body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                        body + "'");
    }
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    kv[key] = value;
  }
  return kv;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    int n = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    std::istringstream fields(item);
    std::string f;
    while (fields >> f) {
      try {
        size_t used = 0;
        out.push_back(std::stod(f, &used));
        if (used != f.size()) throw std::invalid_argument(f);
      } catch (const std::exception&) {
        throw ConfigError(key + ": bad number '" + f + "'");
      }
    }
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

// Length quantity that also accepts the derived unit d_c.
double parse_length(const std::string& key, const std::string& v, double d_c) {
  std::string body = trim(v);
  if (body.size() > 3 && body.compare(body.size() - 3, 3, "d_c") == 0) {
    std::string number = trim(body.substr(0, body.size() - 3));
    try {
      size_t used = 0;
      double mult = std::stod(number, &used);
      if (used != number.size()) throw std::invalid_argument(number);
      return mult * d_c;
    } catch (const std::exception&) {
      throw ConfigError(key + ": bad multiplier in '" + v + "'");
    }
  }
  return units::parse_quantity(body);
}

}  // namespace

CostSettings RunConfig::cost_settings() const {
  CostSettings cs;
  cs.kind = cost;
  cs.eta_design = eta_design;
  cs.ode = ode_options();
  return cs;
}

OdeOptions RunConfig::ode_options() const {
  OdeOptions o;
  o.rel_tol = rel_tol;
  o.abs_tol = abs_tol;
  return o;
}

std::string RunConfig::physics_text() const {
  std::ostringstream out;
  out << "beta_max=" << fmt17(constraints.beta_max) << '\n'
      << "d0=" << fmt17(constraints.d0) << '\n'
      << "d_in=" << fmt17(constraints.d_in) << '\n'
      << "m1=" << fmt17(constraints.m1) << '\n'
      << "m2=" << fmt17(constraints.m2) << '\n'
      << "cost=" << cost_kind_name(cost) << '\n'
      << "two_param=" << (two_param ? 1 : 0) << '\n'
      << "eta_design=" << fmt17(eta_design) << '\n'
      << "t_f=" << fmt17(t_f) << '\n'
      << "t_f_grid=" << fmt17(t_f_min) << ':' << fmt17(t_f_max) << ':' << fmt17(t_f_step) << '\n'
      << "cycles=" << fmt17(cycles_min) << ':' << fmt17(cycles_max) << ':' << fmt17(cycles_step)
      << '\n'
      << "eta_grid=" << fmt17(eta_max) << ':' << eta_points << '\n';
  out << "d_in_ratios=";
  for (double r : d_in_ratios) out << fmt17(r) << ' ';
  out << "\nbeta_multipliers=";
  for (double r : beta_multipliers) out << fmt17(r) << ' ';
  out << "\nmass_ratios=";
  for (double r : mass_ratios) out << fmt17(r) << ' ';
  out << '\n'
      << "e_in=" << fmt17(e_in) << '\n'
      << "n_phases=" << n_phases << '\n'
      << "hot_ion=" << hot_ion << '\n'
      << "cooling_target=" << fmt17(cooling_target) << '\n'
      << "rel_tol=" << fmt17(rel_tol) << '\n'
      << "abs_tol=" << fmt17(abs_tol) << '\n'
      << "samples=" << samples << '\n';
  return out.str();
}

std::string RunConfig::physics_hash() const { return hash_hex(physics_text()); }

RunConfig default_config() {
  RunConfig cfg;
  double beta = units::parse_quantity("0.85e-3 N/m^3");
  double d_c = critical_distance(beta);
  cfg.constraints.beta_max = beta;
  cfg.constraints.d0 = 5.0 * d_c;
  cfg.constraints.d_in = 1.1 * d_c;
  cfg.constraints.m1 = units::parse_quantity("39.96 amu");
  cfg.constraints.m2 = cfg.constraints.m1;
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  auto kv = raw_pairs(text);
  RunConfig cfg = default_config();

  auto take = [&kv](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) return {};
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  // beta_max first: it defines the derived length unit d_c.
  if (auto v = take("beta_max"); !v.empty()) cfg.constraints.beta_max = units::parse_quantity(v);
  if (cfg.constraints.beta_max <= 0) throw ConfigError("beta_max must be positive");
  double d_c = critical_distance(cfg.constraints.beta_max);
  // Lengths may be given in d_c; recompute the bundled defaults against the
  // configured beta_max so partial configs stay self-consistent.
  cfg.constraints.d0 = 5.0 * d_c;
  cfg.constraints.d_in = 1.1 * d_c;
  if (auto v = take("d0"); !v.empty()) cfg.constraints.d0 = parse_length("d0", v, d_c);
  if (auto v = take("d_in"); !v.empty()) cfg.constraints.d_in = parse_length("d_in", v, d_c);

  if (auto v = take("mass"); !v.empty()) {
    cfg.constraints.m1 = cfg.constraints.m2 = units::parse_quantity(v);
  }
  if (auto v = take("m1"); !v.empty()) cfg.constraints.m1 = units::parse_quantity(v);
  if (auto v = take("m2"); !v.empty()) cfg.constraints.m2 = units::parse_quantity(v);

  if (auto v = take("cost"); !v.empty()) {
    auto kind = cost_kind_from_name(v);
    if (!kind) throw ConfigError("cost: unknown kind '" + v + "'");
    cfg.cost = *kind;
  }
  if (auto v = take("two_param"); !v.empty()) cfg.two_param = parse_bool("two_param", v);
  if (auto v = take("eta_design"); !v.empty()) cfg.eta_design = units::parse_quantity(v);

  if (auto v = take("t_f"); !v.empty()) cfg.t_f = units::parse_quantity(v);
  if (auto v = take("t_f_min"); !v.empty()) cfg.t_f_min = units::parse_quantity(v);
  if (auto v = take("t_f_max"); !v.empty()) cfg.t_f_max = units::parse_quantity(v);
  if (auto v = take("t_f_step"); !v.empty()) cfg.t_f_step = units::parse_quantity(v);
  if (auto v = take("cycles_min"); !v.empty()) cfg.cycles_min = units::parse_quantity(v);
  if (auto v = take("cycles_max"); !v.empty()) cfg.cycles_max = units::parse_quantity(v);
  if (auto v = take("cycles_step"); !v.empty()) cfg.cycles_step = units::parse_quantity(v);
  if (auto v = take("eta_max"); !v.empty()) cfg.eta_max = units::parse_quantity(v);
  if (auto v = take("eta_points"); !v.empty()) cfg.eta_points = parse_int("eta_points", v);

  if (auto v = take("d_in_ratios"); !v.empty()) cfg.d_in_ratios = parse_list("d_in_ratios", v);
  if (auto v = take("beta_multipliers"); !v.empty())
    cfg.beta_multipliers = parse_list("beta_multipliers", v);
  if (auto v = take("mass_ratios"); !v.empty()) cfg.mass_ratios = parse_list("mass_ratios", v);

  if (auto v = take("e_in"); !v.empty()) {
    // accept an optional "quanta" suffix
    std::string body = trim(v);
    if (body.size() > 6 && body.compare(body.size() - 6, 6, "quanta") == 0)
      body = trim(body.substr(0, body.size() - 6));
    cfg.e_in = units::parse_quantity(body);
  }
  if (auto v = take("n_phases"); !v.empty()) cfg.n_phases = parse_int("n_phases", v);
  if (auto v = take("hot_ion"); !v.empty()) cfg.hot_ion = parse_int("hot_ion", v);
  if (auto v = take("cooling_target"); !v.empty()) cfg.cooling_target = units::parse_quantity(v);

  if (auto v = take("rel_tol"); !v.empty()) cfg.rel_tol = units::parse_quantity(v);
  if (auto v = take("abs_tol"); !v.empty()) cfg.abs_tol = units::parse_quantity(v);

  if (auto v = take("jobs"); !v.empty()) cfg.jobs = parse_int("jobs", v);
  if (auto v = take("samples"); !v.empty()) cfg.samples = parse_int("samples", v);
  if (auto v = take("grid"); !v.empty()) cfg.grid = parse_bool("grid", v);
  if (auto v = take("trajectory"); !v.empty()) cfg.trajectory = parse_bool("trajectory", v);
  if (auto v = take("out_dir"); !v.empty()) cfg.out_dir = v;
  if (auto v = take("cache_dir"); !v.empty()) cfg.cache_dir = v;

  if (!kv.empty()) throw ConfigError("unknown key '" + kv.begin()->first + "'");

  if (cfg.constraints.m1 <= 0 || cfg.constraints.m2 <= 0)
    throw ConfigError("ion masses must be positive");
  if (cfg.constraints.d0 <= cfg.constraints.d_in)
    throw ConfigError("d0 must exceed d_in");
  if (cfg.t_f <= 0 || cfg.t_f_min <= 0 || cfg.t_f_step <= 0 || cfg.t_f_max < cfg.t_f_min)
    throw ConfigError("run-time grid must be positive and ordered");
  if (cfg.cycles_min <= 0 || cfg.cycles_step <= 0 || cfg.cycles_max < cfg.cycles_min)
    throw ConfigError("cycle grid must be positive and ordered");
  if (cfg.eta_points < 1 || cfg.eta_max < 0) throw ConfigError("bad stray-field grid");
  if (cfg.e_in < 0 || cfg.n_phases < 1) throw ConfigError("bad hot-ion settings");
  if (cfg.hot_ion != 1 && cfg.hot_ion != 2) throw ConfigError("hot_ion must be 1 or 2");
  if (cfg.rel_tol <= 0 || cfg.abs_tol <= 0) throw ConfigError("tolerances must be positive");
  if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (cfg.samples < 2) throw ConfigError("samples must be at least 2");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::string text = read_file(path);
  return parse_config(text);
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# physical constraints\n"
      << "beta_max = " << units::format_quantity(cfg.constraints.beta_max, "N/m^3") << '\n'
      << "d0 = " << units::format_quantity(cfg.constraints.d0, "um") << '\n'
      << "d_in = " << units::format_quantity(cfg.constraints.d_in, "um") << '\n'
      << "m1 = " << units::format_quantity(cfg.constraints.m1, "amu") << '\n'
      << "m2 = " << units::format_quantity(cfg.constraints.m2, "amu") << '\n'
      << "\n# cost\n"
      << "cost = " << cost_kind_name(cfg.cost) << '\n'
      << "two_param = " << (cfg.two_param ? "true" : "false") << '\n'
      << "eta_design = " << fmt17(cfg.eta_design) << '\n'
      << "\n# grids\n"
      << "t_f = " << units::format_quantity(cfg.t_f, "us") << '\n'
      << "t_f_min = " << units::format_quantity(cfg.t_f_min, "us") << '\n'
      << "t_f_max = " << units::format_quantity(cfg.t_f_max, "us") << '\n'
      << "t_f_step = " << units::format_quantity(cfg.t_f_step, "us") << '\n'
      << "cycles_min = " << fmt17(cfg.cycles_min) << '\n'
      << "cycles_max = " << fmt17(cfg.cycles_max) << '\n'
      << "cycles_step = " << fmt17(cfg.cycles_step) << '\n'
      << "eta_max = " << fmt17(cfg.eta_max) << '\n'
      << "eta_points = " << cfg.eta_points << '\n';
  out << "d_in_ratios =";
  for (double r : cfg.d_in_ratios) out << ' ' << fmt17(r);
  out << "\nbeta_multipliers =";
  for (double r : cfg.beta_multipliers) out << ' ' << fmt17(r);
  out << "\nmass_ratios =";
  for (double r : cfg.mass_ratios) out << ' ' << fmt17(r);
  out << "\n\n# energy swap\n"
      << "e_in = " << fmt17(cfg.e_in) << " quanta\n"
      << "n_phases = " << cfg.n_phases << '\n'
      << "hot_ion = " << cfg.hot_ion << '\n'
      << "cooling_target = " << fmt17(cfg.cooling_target) << '\n'
      << "\n# integrator\n"
      << "rel_tol = " << fmt17(cfg.rel_tol) << '\n'
      << "abs_tol = " << fmt17(cfg.abs_tol) << '\n'
      << "\n# runtime\n"
      << "jobs = " << cfg.jobs << '\n'
      << "samples = " << cfg.samples << '\n'
      << "grid = " << (cfg.grid ? "true" : "false") << '\n'
      << "trajectory = " << (cfg.trajectory ? "true" : "false") << '\n'
      << "out_dir = " << cfg.out_dir << '\n';
  if (!cfg.cache_dir.empty()) out << "cache_dir = " << cfg.cache_dir << '\n';
  return out.str();
}

}  // namespace ionswap
