#ifndef OWG_H
#define OWG_H

/* C interface to the open-waveguide Green's function library.
 *
 * Every entry point returns a status code:
 *   0  success
 *   1  configuration error (bad input, bad config document)
 *   2  numerical failure (non-convergence, pole proximity, ...)
 * On failure, owg_last_error() returns a diagnostic message owned by the
 * context. Strings returned through out-parameters are heap-allocated and
 * must be released with owg_free_string().
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct owg_context owg_context;

/* Creates a context from a JSON configuration document (NULL or "" for the
 * defaults). Guided modes are solved eagerly so later calls are cheap. */
int owg_create(const char* config_json, owg_context** out_ctx);
void owg_destroy(owg_context* ctx);

/* Last error message of the failed call, or "" if none. Owned by ctx; pass
 * NULL to read the diagnostic of a failed owg_create. */
const char* owg_last_error(const owg_context* ctx);
void owg_free_string(char* s);

/* Mode table of the configured profile as JSON. */
int owg_modes_json(owg_context* ctx, char** out_json);

/* Single Green's-function evaluation; route is "real", "contour", or
 * "both". Output JSON carries the guided terms, the radiative part, and the
 * total. */
int owg_green_eval(owg_context* ctx, double x, double z, double xi,
                   double zeta, const char* route, char** out_json);

/* Synthesizes the configured source on the configured observation grid and
 * returns the field as CSV (x, z, u, u_0, then per-mode components). */
int owg_field_csv(owg_context* ctx, char** out_csv);

/* Radiation-condition diagnostics for the configured source and R grid.
 * Either output pointer may be NULL when only one artifact is wanted. */
int owg_radcheck(owg_context* ctx, char** out_csv, char** out_json);

/* Dump of the deformed spectral contour for angle theta as CSV. */
int owg_contour_csv(owg_context* ctx, double theta, char** out_csv);

/* Runs the acceptance suite; out_json gets the per-check report. Returns 0
 * also when checks fail (inspect "all_passed"); nonzero only for errors
 * while running. */
int owg_verify_json(owg_context* ctx, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OWG_H */
