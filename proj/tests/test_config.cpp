// Config text: parsing, defaults, validation, canonical rendering, hashing.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "ionswap/config.hpp"
#include "ionswap/errors.hpp"
#include "ionswap/units.hpp"

using namespace ionswap;

namespace {

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("default config matches the bundled reference constraints") {
  const RunConfig cfg = default_config();
  const double beta = units::parse_quantity("0.85e-3 N/m^3");
  const double d_c = critical_distance(beta);
  CHECK(cfg.constraints.beta_max == beta);
  CHECK(cfg.constraints.d0 == 5.0 * d_c);
  CHECK(cfg.constraints.d_in == 1.1 * d_c);
  CHECK(cfg.constraints.m1 == 39.96);
  CHECK(cfg.constraints.m2 == 39.96);
  CHECK(cfg.constraints.equal_masses());
  CHECK(cfg.cost == CostKind::exact_robust);
  CHECK(cfg.two_param);
  CHECK(cfg.eta_design == 0.015);
  CHECK(cfg.samples == 2001);
  CHECK(cfg.jobs == 1);
  CHECK(cfg.cache_dir.empty());
}

TEST_CASE("empty text parses to the defaults") {
  const RunConfig parsed = parse_config("");
  const RunConfig def = default_config();
  CHECK(parsed.physics_text() == def.physics_text());
  CHECK(parsed.physics_hash() == def.physics_hash());
}

TEST_CASE("comments, blank lines, and duplicate keys") {
  const std::string text =
      "# leading comment\n"
      "\n"
      "t_f = 20 us   # trailing comment\n"
      "t_f = 25 us\n"
      "   \n"
      "n_phases = 7\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.t_f == 25.0);  // later assignment wins
  CHECK(cfg.n_phases == 7);
}

TEST_CASE("lengths accept the derived unit d_c") {
  const RunConfig cfg = parse_config("d_in = 1.05 d_c\nd0 = 4 d_c\n");
  const double d_c = critical_distance(cfg.constraints.beta_max);
  CHECK(cfg.constraints.d_in == doctest::Approx(1.05 * d_c).epsilon(1e-15));
  CHECK(cfg.constraints.d0 == doctest::Approx(4.0 * d_c).epsilon(1e-15));

  // No space before the suffix.
  const RunConfig tight = parse_config("d_in = 1.05d_c\n");
  CHECK(tight.constraints.d_in == doctest::Approx(1.05 * d_c).epsilon(1e-15));

  // d_c is resolved against beta_max from the same text, regardless of the
  // order the lines appear in.
  const RunConfig scaled =
      parse_config("d_in = 1.05 d_c\nbeta_max = 8.5e-3 N/m^3\n");
  const double d_c10 = critical_distance(units::parse_quantity("8.5e-3 N/m^3"));
  CHECK(scaled.constraints.d_in == doctest::Approx(1.05 * d_c10).epsilon(1e-15));
}

TEST_CASE("absolute lengths and other unit suffixes") {
  const RunConfig cfg = parse_config(
      "d_in = 15.4 um\n"
      "d0 = 0.0701 mm\n"
      "mass = 39.96 amu\n"
      "t_f = 30000 ns\n");
  CHECK(cfg.constraints.d_in == doctest::Approx(15.4).epsilon(1e-15));
  CHECK(cfg.constraints.d0 == doctest::Approx(70.1).epsilon(1e-12));
  CHECK(cfg.t_f == doctest::Approx(30.0).epsilon(1e-15));
}

TEST_CASE("mass shorthand and per-ion overrides") {
  const RunConfig both = parse_config("mass = 10 amu\n");
  CHECK(both.constraints.m1 == 10.0);
  CHECK(both.constraints.m2 == 10.0);

  const RunConfig mixed = parse_config("mass = 10 amu\nm2 = 5 amu\n");
  CHECK(mixed.constraints.m1 == 10.0);
  CHECK(mixed.constraints.m2 == 5.0);
}

TEST_CASE("e_in accepts an optional quanta suffix") {
  CHECK(parse_config("e_in = 20.5 quanta\n").e_in == 20.5);
  CHECK(parse_config("e_in = 20.5\n").e_in == 20.5);
}

TEST_CASE("bools, ints, and lists") {
  const RunConfig cfg = parse_config(
      "two_param = false\n"
      "grid = on\n"
      "trajectory = 1\n"
      "jobs = 4\n"
      "eta_points = 11\n"
      "mass_ratios = 1.25, 2, 5, 10\n"
      "beta_multipliers = 0.1 1 10\n");
  CHECK(!cfg.two_param);
  CHECK(cfg.grid);
  CHECK(cfg.trajectory);
  CHECK(cfg.jobs == 4);
  CHECK(cfg.eta_points == 11);
  REQUIRE(cfg.mass_ratios.size() == 4);
  CHECK(cfg.mass_ratios[0] == 1.25);
  CHECK(cfg.mass_ratios[3] == 10.0);
  REQUIRE(cfg.beta_multipliers.size() == 3);  // whitespace separators work too
  CHECK(cfg.beta_multipliers[2] == 10.0);
}

TEST_CASE("cost kinds parse by name") {
  CHECK(parse_config("cost = approx_nonrobust\n").cost == CostKind::approx_nonrobust);
  CHECK(parse_config("cost = exact_nonrobust\n").cost == CostKind::exact_nonrobust);
  CHECK(parse_config("cost = approx_robust\n").cost == CostKind::approx_robust);
  CHECK(parse_config("cost = exact_robust\n").cost == CostKind::exact_robust);
  CHECK_THROWS_AS(parse_config("cost = fancy\n"), ConfigError);
}

TEST_CASE("malformed input throws ConfigError") {
  CHECK_THROWS_AS(parse_config("frobnicate = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t_f 30 us\n"), ConfigError);        // missing '='
  CHECK_THROWS_AS(parse_config("t_f =\n"), ConfigError);            // empty value
  CHECK_THROWS_AS(parse_config("= 3\n"), ConfigError);              // empty key
  CHECK_THROWS_AS(parse_config("t_f = 30 parsec\n"), ConfigError);  // unknown unit
  CHECK_THROWS_AS(parse_config("jobs = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mass_ratios = 1, bogus\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("d_in = x d_c\n"), ConfigError);
}

TEST_CASE("semantic validation") {
  CHECK_THROWS_AS(parse_config("beta_max = -1 N/m^3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("d0 = 1 d_c\nd_in = 2 d_c\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("m1 = -3 amu\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t_f = -5 us\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t_f_min = 30 us\nt_f_max = 10 us\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("cycles_step = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eta_points = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("e_in = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n_phases = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("hot_ion = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("rel_tol = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("jobs = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("samples = 1\n"), ConfigError);
}

TEST_CASE("render-parse round trip") {
  RunConfig cfg = default_config();
  cfg.cost = CostKind::approx_robust;
  cfg.two_param = false;
  cfg.eta_design = 0.0123;
  cfg.t_f = 17.25;
  cfg.t_f_min = 12.5;
  cfg.t_f_max = 55.0;
  cfg.t_f_step = 0.5;
  cfg.cycles_min = 4.0;
  cfg.cycles_max = 12.0;
  cfg.cycles_step = 0.5;
  cfg.eta_max = 0.03;
  cfg.eta_points = 13;
  cfg.d_in_ratios = {1.0, 1.05, 1.1};
  cfg.beta_multipliers = {0.1, 1.0, 10.0};
  cfg.mass_ratios = {2.0, 5.0};
  cfg.e_in = 20.5;
  cfg.n_phases = 9;
  cfg.hot_ion = 2;
  cfg.cooling_target = 0.2;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 1e-11;
  cfg.jobs = 3;
  cfg.samples = 501;
  cfg.grid = true;
  cfg.trajectory = true;
  cfg.out_dir = "results";
  cfg.cache_dir = "cache";

  const RunConfig back = parse_config(render_config(cfg));

  // Quantities rendered with a unit suffix carry 12 significant digits.
  CHECK(close_rel(back.constraints.beta_max, cfg.constraints.beta_max, 1e-11));
  CHECK(close_rel(back.constraints.d0, cfg.constraints.d0, 1e-11));
  CHECK(close_rel(back.constraints.d_in, cfg.constraints.d_in, 1e-11));
  CHECK(close_rel(back.constraints.m1, cfg.constraints.m1, 1e-11));
  CHECK(close_rel(back.constraints.m2, cfg.constraints.m2, 1e-11));
  CHECK(close_rel(back.t_f, cfg.t_f, 1e-11));
  CHECK(close_rel(back.t_f_min, cfg.t_f_min, 1e-11));
  CHECK(close_rel(back.t_f_max, cfg.t_f_max, 1e-11));
  CHECK(close_rel(back.t_f_step, cfg.t_f_step, 1e-11));

  // Bare scalars are rendered with a full 17 digits and round-trip exactly.
  CHECK(back.eta_design == cfg.eta_design);
  CHECK(back.cycles_min == cfg.cycles_min);
  CHECK(back.cycles_max == cfg.cycles_max);
  CHECK(back.cycles_step == cfg.cycles_step);
  CHECK(back.eta_max == cfg.eta_max);
  CHECK(back.e_in == cfg.e_in);
  CHECK(back.cooling_target == cfg.cooling_target);
  CHECK(back.rel_tol == cfg.rel_tol);
  CHECK(back.abs_tol == cfg.abs_tol);
  CHECK(back.d_in_ratios == cfg.d_in_ratios);
  CHECK(back.beta_multipliers == cfg.beta_multipliers);
  CHECK(back.mass_ratios == cfg.mass_ratios);

  CHECK(back.cost == cfg.cost);
  CHECK(back.two_param == cfg.two_param);
  CHECK(back.eta_points == cfg.eta_points);
  CHECK(back.n_phases == cfg.n_phases);
  CHECK(back.hot_ion == cfg.hot_ion);
  CHECK(back.jobs == cfg.jobs);
  CHECK(back.samples == cfg.samples);
  CHECK(back.grid == cfg.grid);
  CHECK(back.trajectory == cfg.trajectory);
  CHECK(back.out_dir == cfg.out_dir);
  CHECK(back.cache_dir == cfg.cache_dir);
}

TEST_CASE("physics hash ignores plumbing and tracks physics") {
  const RunConfig base = parse_config("");
  const RunConfig plumbing = parse_config(
      "jobs = 8\n"
      "out_dir = elsewhere\n"
      "cache_dir = /tmp/somewhere\n"
      "grid = true\n"
      "trajectory = true\n");
  CHECK(plumbing.physics_hash() == base.physics_hash());

  const RunConfig beta = parse_config("beta_max = 0.86e-3 N/m^3\n");
  CHECK(beta.physics_hash() != base.physics_hash());

  const RunConfig dense = parse_config("samples = 4001\n");
  CHECK(dense.physics_hash() != base.physics_hash());  // samples shape outputs

  CHECK(base.physics_hash().size() == 16);
}

TEST_CASE("cost settings and ode options mirror the config") {
  RunConfig cfg = default_config();
  cfg.cost = CostKind::approx_nonrobust;
  cfg.eta_design = 0.02;
  cfg.rel_tol = 1e-8;
  cfg.abs_tol = 1e-10;
  const CostSettings cs = cfg.cost_settings();
  CHECK(cs.kind == CostKind::approx_nonrobust);
  CHECK(cs.eta_design == 0.02);
  CHECK(cs.ode.rel_tol == 1e-8);
  CHECK(cs.ode.abs_tol == 1e-10);
}
