/* C interface to the adiabatic gate simulator.  All entry points are
 * thread-safe; error messages are thread-local and survive until the next
 * call on the same thread. */
#ifndef AQSIM_H
#define AQSIM_H

#include <stddef.h>

#if defined(__GNUC__)
#define AQSIM_API __attribute__((visibility("default")))
#else
#define AQSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  AQSIM_OK = 0,
  AQSIM_ERR_RUNTIME = 1,  /* evaluation failed (gap closed, step underflow, ...) */
  AQSIM_ERR_CONFIG = 2,   /* malformed configuration or options */
  AQSIM_ERR_ARGUMENT = 3  /* null pointer or bad index at the C boundary */
};

/* Artifact set produced by one command: named text files (JSON or CSV). */
typedef struct aqsim_result aqsim_result;

/* Runs one command ("evolve", "sweep", "berry", "holonomy", "gatearray",
 * "aqc", "bound") with a JSON configuration and a JSON options object
 * (seed, jobs, tolerance, hbar_units, sweep controls).  NULL stands for an
 * empty object.  On success *result owns the artifacts and must be released
 * with aqsim_result_free. */
AQSIM_API int aqsim_run(const char* command, const char* config_json,
                        const char* options_json, aqsim_result** result);

AQSIM_API int aqsim_result_count(const aqsim_result* result);
/* Name and NUL-terminated body of artifact `index`; NULL if out of range.
 * Pointers stay valid until aqsim_result_free. */
AQSIM_API const char* aqsim_result_name(const aqsim_result* result, int index);
AQSIM_API const char* aqsim_result_data(const aqsim_result* result, int index);
AQSIM_API size_t aqsim_result_size(const aqsim_result* result, int index);
AQSIM_API void aqsim_result_free(aqsim_result* result);

/* Message of the last failing call on this thread ("" when the last call
 * succeeded). */
AQSIM_API const char* aqsim_last_error(void);

/* Gate budget m_max = 1/eps and largest factorable n_max =
 * 10^((1/(300 eps))^(1/3)); eps must lie in (0, 1). */
AQSIM_API int aqsim_shor_bound(double epsilon, double* m_max, double* n_max);

/* Order-of-magnitude error law (1/(gap * duration))^order. */
AQSIM_API int aqsim_error_estimate(double gap, double duration, int order,
                                   double* estimate);

/* Gap formula lookup for the estimated-only proposals ("choi_single",
 * "choi_two", "faoro_single", "faoro_two"); params_json holds the named
 * magnitudes, e.g. {"h": 1.0, "j1": 0.2, "j2": 0.3}. */
AQSIM_API int aqsim_named_gap(const char* model, const char* params_json,
                              double* gap);

AQSIM_API const char* aqsim_version(void);

#ifdef __cplusplus
}
#endif

#endif /* AQSIM_H */
