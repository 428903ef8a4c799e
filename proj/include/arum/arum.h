/* C API for the arum discrete-choice library.
 *
 * Conventions:
 *   - Every fallible function returns arum_status; ARUM_OK is 0.
 *   - On failure, arum_last_error() returns a thread-local message for the
 *     most recent failing call on this thread.
 *   - Objects are opaque handles freed with their arum_*_free function.
 *   - Probabilities and surplus values cross this boundary as doubles; exact
 *     rational results are available through the scenario artifacts (run
 *     scenarios in "rational" mode and read the emitted CSV/JSON).
 */
#ifndef ARUM_ARUM_H
#define ARUM_ARUM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ARUM_API __declspec(dllexport)
#else
#define ARUM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arum_status {
  ARUM_OK = 0,
  ARUM_ERR_INTERNAL = 1,
  ARUM_ERR_PARSE = 2,
  ARUM_ERR_VALIDATION = 3,
  ARUM_ERR_ARGMAX_TIE = 4,
  ARUM_ERR_INFEASIBLE = 5,
  ARUM_ERR_NO_K_MAXIMAL = 6,
  ARUM_ERR_FULL_CONSIDERATION = 7,
  ARUM_ERR_NOT_CARTESIAN = 8,
  ARUM_ERR_UNSUPPORTED_ANALYSIS = 9,
  ARUM_ERR_IO = 10,
  ARUM_ERR_INVALID_ARGUMENT = 11
} arum_status;

ARUM_API const char* arum_version(void);
ARUM_API const char* arum_status_name(arum_status status);

/* Copies the thread-local message of the most recent failing call into buf
 * (NUL-terminated, truncated to cap). Returns the full message length. */
ARUM_API size_t arum_last_error(char* buf, size_t cap);

/* Frees strings returned through char** out-parameters. */
ARUM_API void arum_string_free(char* s);

/* ----------------------------------------------------------------- models */

typedef struct arum_model arum_model;
typedef struct arum_grid arum_grid;
typedef struct arum_field arum_field;

/* Model JSON: {"class":"arum"|"arum_e"|"arum_cs","K":n,
 *              "atoms":[{"eps":[...],"S":[...],"w":...}]}.
 * Numeric entries may be numbers or decimal/fraction strings; eps entries of
 * class arum_e may be the literal "-inf". */
ARUM_API arum_status arum_model_parse_json(const char* json_text, arum_model** out);
ARUM_API arum_status arum_model_load_file(const char* path, arum_model** out);
ARUM_API arum_status arum_model_to_json(const arum_model* model, char** json_out);
ARUM_API void arum_model_free(arum_model* model);
ARUM_API int arum_model_alternatives(const arum_model* model);

/* Total weight of atoms in which alternative k is considered (shock finite /
 * k in the consideration set); 1.0 for classic models. */
ARUM_API arum_status arum_model_consideration_prob(const arum_model* model, int k, double* out);

/* ------------------------------------------------------------------ grids */

/* coords: n_points * dim doubles, row-major. */
ARUM_API arum_status arum_grid_create(int dim, size_t n_points, const double* coords,
                                      arum_grid** out);
/* Cartesian product of per-coordinate ranges lo[d], lo[d]+step[d], ..., hi[d]. */
ARUM_API arum_status arum_grid_rect(int dim, const double* lo, const double* hi,
                                    const double* step, arum_grid** out);
ARUM_API void arum_grid_free(arum_grid* grid);
ARUM_API int arum_grid_dim(const arum_grid* grid);
ARUM_API size_t arum_grid_size(const arum_grid* grid);

/* ------------------------------------------------------------- evaluation */

/* probs_out must hold K doubles. Fails with ARUM_ERR_ARGMAX_TIE if an atom
 * ties at u. */
ARUM_API arum_status arum_choice_prob(const arum_model* model, const double* u, double* probs_out);
ARUM_API arum_status arum_social_surplus(const arum_model* model, const double* u, double* out);

ARUM_API arum_status arum_field_compute(const arum_model* model, const arum_grid* grid,
                                        arum_field** out);
ARUM_API void arum_field_free(arum_field* field);
ARUM_API arum_status arum_field_prob(const arum_field* field, size_t point_index, int k,
                                     double* out);

/* Closed-form oracle for i.i.d. standard Gumbel shocks (softmax). */
ARUM_API arum_status arum_gumbel_choice_prob(int dim, const double* u, double* probs_out);

/* Empirical frequencies over n draws; deterministic in (seed, n). probs_out
 * and stderr_out must hold K doubles. */
ARUM_API arum_status arum_monte_carlo_choice_prob(const arum_model* model, const double* u,
                                                  uint64_t n, uint64_t seed, double* probs_out,
                                                  double* stderr_out);

/* ----------------------------------------------------------- analyses */

/* Identified set [lo, hi] for the probability k is considered; sharp_out is 1
 * when the grid contains a k-maximal point. */
ARUM_API arum_status arum_consideration_identified_set(const arum_field* field, int k,
                                                       double* lo_out, double* hi_out,
                                                       int* sharp_out);

/* Identified set [0, 1 - sup p_k] for the maximal k-attention change. */
ARUM_API arum_status arum_attention_change_bounds(const arum_field* field, int k, double* lo_out,
                                                  double* hi_out);

/* Welfare change V(u_tilde) - V(u) via the path integral of choice
 * probabilities (composite Gauss-Legendre with `panels` panels, split at the
 * model's exact kinks). */
ARUM_API arum_status arum_welfare_change(const arum_model* model, const double* u,
                                         const double* u_tilde, int panels, double* out);

/* max_k |p_k(u) - central difference of the social surplus| at step h. */
ARUM_API arum_status arum_envelope_check(const arum_model* model, const double* u, double h,
                                         double* max_deviation_out);

/* -------------------------------------------------------------- scenarios */

typedef struct arum_scenario_options {
  const char* output_dir;  /* NULL: scenario file, then $ARUM_OUTPUT_DIR, then "arum_out" */
  const char* arithmetic;  /* NULL or "rational" / "float" */
  const char* atom_grid;   /* NULL or "lo:hi:step" override for counterfactual analyses */
  int has_seed;
  uint64_t seed;
} arum_scenario_options;

/* Runs a scenario file; on success writes artifacts plus manifest.json and
 * returns a JSON summary (free with arum_string_free). options may be NULL. */
ARUM_API arum_status arum_scenario_run(const char* path, const arum_scenario_options* options,
                                       char** summary_json_out);

/* Parses and validates a scenario without executing it. */
ARUM_API arum_status arum_scenario_validate(const char* path,
                                            const arum_scenario_options* options);

/* JSON Schema for scenario files (free with arum_string_free). */
ARUM_API arum_status arum_scenario_schema(char** schema_json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ARUM_ARUM_H */
