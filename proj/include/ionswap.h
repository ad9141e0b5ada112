#ifndef IONSWAP_H
#define IONSWAP_H

/* Batch interface for designing and analysing shortcut transport protocols
 * for two trapped ions in a dynamic double well. All functions return a
 * status code; 0 is success. Failing calls leave a message readable through
 * ionswap_last_error(). Strings handed out by the library are heap copies;
 * release them with ionswap_string_free().
 */

#ifdef __cplusplus
extern "C" {
#endif

/* Mirrors the CLI exit codes. */
typedef enum ionswap_status {
  IONSWAP_OK = 0,
  IONSWAP_ERR_INFEASIBLE = 1, /* constraints admit no such design/solution */
  IONSWAP_ERR_CONFIG = 2,     /* malformed configuration or arguments */
  IONSWAP_ERR_NUMERICS = 3    /* integration or root/fit failure */
} ionswap_status;

const char* ionswap_version(void);

/* Message of the most recent failing call on this thread. */
const char* ionswap_last_error(void);

void ionswap_string_free(char* s);

/* A parsed run configuration (constraints, cost, grids, output paths). */
typedef struct ionswap_run ionswap_run;

/* config_text uses `key = value` lines with explicit unit suffixes; NULL or
 * empty text gives the bundled reference configuration. */
int ionswap_run_new(const char* config_text, ionswap_run** out);
void ionswap_run_free(ionswap_run* run);

/* Canonical text render of the configuration (round-trips). */
int ionswap_run_config_text(const ionswap_run* run, char** out);

/* Design numbers (critical distance, mode frequencies, exchange time) as a
 * JSON document. */
int ionswap_design_json(const ionswap_run* run, char** out);

/* Optimize the free protocol parameters at run-time t_f (us) under the
 * configured cost. Any output pointer may be NULL. */
int ionswap_optimize(const ionswap_run* run, double t_f, double* A, double* B,
                     double* cost_quanta);

/* Dense samples of the potential coefficients for (A, B, t_f), as JSON. */
int ionswap_protocol_json(const ionswap_run* run, double A, double B, double t_f,
                          int samples, char** out);

/* Final excitations (quanta) of an initially ground-state pair driven
 * through (A, B, t_f) under a constant stray level eta. */
int ionswap_excitations(const ionswap_run* run, double A, double B, double t_f,
                        double eta, double* e1_quanta, double* e2_quanta);

/* Batch subcommand: design | optimize | sweep | cool | resonance | scale |
 * unequal. Writes result files per the configuration and returns the summary
 * JSON document. */
int ionswap_command(const ionswap_run* run, const char* name, char** out_summary);

/* Full acceptance gate against the bundled reference configuration (or
 * config_text when non-NULL). Per-criterion lines stream to stderr; the full
 * report text is returned. all_passed is set to 0 or 1. */
int ionswap_validate(const char* config_text, int jobs, char** out_report,
                     int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* IONSWAP_H */
