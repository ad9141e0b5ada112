#include "ionswap.h"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <new>
#include <string>

#include "ionswap/acceptance.hpp"
#include "ionswap/analysis.hpp"
#include "ionswap/config.hpp"
#include "ionswap/errors.hpp"
#include "ionswap/pipelines.hpp"
#include "ionswap/version.hpp"

#define IONSWAP_API __attribute__((visibility("default")))

namespace {

thread_local std::string g_last_error;

char* heap_copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(int code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

// Runs `body` and maps exceptions onto status codes.
template <class F>
int guarded(F&& body) {
  try {
    body();
    return IONSWAP_OK;
  } catch (const ionswap::Error& e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc& e) {
    return fail(IONSWAP_ERR_NUMERICS, e.what());
  } catch (const std::exception& e) {
    return fail(IONSWAP_ERR_NUMERICS, e.what());
  }
}

}  // namespace

struct ionswap_run {
  ionswap::RunConfig cfg;
};

extern "C" {

IONSWAP_API const char* ionswap_version(void) { return ionswap::kToolVersion; }

IONSWAP_API const char* ionswap_last_error(void) { return g_last_error.c_str(); }

IONSWAP_API void ionswap_string_free(char* s) { std::free(s); }

IONSWAP_API int ionswap_run_new(const char* config_text, ionswap_run** out) {
  if (!out) return fail(IONSWAP_ERR_CONFIG, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    std::string text = config_text ? config_text : "";
    ionswap::RunConfig cfg =
        text.empty() ? ionswap::default_config() : ionswap::parse_config(text);
    *out = new ionswap_run{std::move(cfg)};
  });
}

IONSWAP_API void ionswap_run_free(ionswap_run* run) { delete run; }

IONSWAP_API int ionswap_run_config_text(const ionswap_run* run, char** out) {
  if (!run || !out) return fail(IONSWAP_ERR_CONFIG, "null argument");
  return guarded([&] { *out = heap_copy(ionswap::render_config(run->cfg)); });
}

IONSWAP_API int ionswap_design_json(const ionswap_run* run, char** out) {
  if (!run || !out) return fail(IONSWAP_ERR_CONFIG, "null argument");
  return guarded([&] {
    ionswap::DesignBoundary dsn = ionswap::solve_boundaries(run->cfg.constraints);
    *out = heap_copy(ionswap::pipelines::design_json(dsn).dump(2) + "\n");
  });
}

IONSWAP_API int ionswap_optimize(const ionswap_run* run, double t_f, double* A, double* B,
                                 double* cost_quanta) {
  if (!run) return fail(IONSWAP_ERR_CONFIG, "null argument");
  return guarded([&] {
    ionswap::DesignBoundary dsn = ionswap::solve_boundaries(run->cfg.constraints);
    ionswap::OptResult opt = ionswap::optimize_protocol(dsn, t_f, run->cfg.cost_settings(),
                                                        run->cfg.two_param);
    if (A) *A = opt.A;
    if (B) *B = opt.B;
    if (cost_quanta) *cost_quanta = opt.cost;
  });
}

IONSWAP_API int ionswap_protocol_json(const ionswap_run* run, double A, double B,
                                      double t_f, int samples, char** out) {
  if (!run || !out) return fail(IONSWAP_ERR_CONFIG, "null argument");
  if (samples < 2) return fail(IONSWAP_ERR_CONFIG, "samples must be at least 2");
  return guarded([&] {
    ionswap::DesignBoundary dsn = ionswap::solve_boundaries(run->cfg.constraints);
    *out = heap_copy(ionswap::pipelines::protocol_json(dsn, A, B, t_f, samples).dump(2) +
                     "\n");
  });
}

IONSWAP_API int ionswap_excitations(const ionswap_run* run, double A, double B, double t_f,
                                    double eta, double* e1_quanta, double* e2_quanta) {
  if (!run) return fail(IONSWAP_ERR_CONFIG, "null argument");
  return guarded([&] {
    ionswap::DesignBoundary dsn = ionswap::solve_boundaries(run->cfg.constraints);
    ionswap::Protocol p(dsn, A, B, t_f);
    ionswap::GroundPoint ground =
        ionswap::ground_excitations(p, eta, run->cfg.ode_options());
    if (ground.flagged) throw ionswap::NumericsError("excitation run failed");
    if (e1_quanta) *e1_quanta = ground.e1;
    if (e2_quanta) *e2_quanta = ground.e2;
  });
}

IONSWAP_API int ionswap_command(const ionswap_run* run, const char* name,
                                char** out_summary) {
  if (!run || !name) return fail(IONSWAP_ERR_CONFIG, "null argument");
  return guarded([&] {
    nlohmann::json summary = ionswap::pipelines::run_command(name, run->cfg);
    if (out_summary) *out_summary = heap_copy(summary.dump(2) + "\n");
  });
}

IONSWAP_API int ionswap_validate(const char* config_text, int jobs, char** out_report,
                                 int* all_passed) {
  return guarded([&] {
    std::string text = config_text ? config_text : "";
    ionswap::RunConfig cfg =
        text.empty() ? ionswap::default_config() : ionswap::parse_config(text);
    ionswap::AcceptanceOptions opt;
    opt.jobs = jobs >= 1 ? jobs : cfg.jobs;
    opt.progress = &std::cerr;
    std::vector<ionswap::CriterionResult> results = ionswap::run_acceptance(cfg, opt);
    std::string report;
    for (const ionswap::CriterionResult& r : results) report += criterion_line(r) + "\n";
    report += ionswap::all_passed(results) ? "ALL CRITERIA PASSED\n" : "CRITERIA FAILED\n";
    if (out_report) *out_report = heap_copy(report);
    if (all_passed) *all_passed = ionswap::all_passed(results) ? 1 : 0;
  });
}

}  // extern "C"
