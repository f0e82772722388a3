#ifndef DGPA_H
#define DGPA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum {
  DGPA_STATUS_OK = 0,
  /**
   * The computation ran, but a check failed; the report has details.
   */
  DGPA_STATUS_CHECK_FAILED = 1,
  DGPA_STATUS_INVALID_INPUT = 2,
  DGPA_STATUS_NULL_ARGUMENT = 3,
  DGPA_STATUS_INVALID_UTF8 = 4,
  DGPA_STATUS_INTERNAL_ERROR = 5,
} DgpaStatus;

/**
 * Opaque handle to a parsed (not yet verified) algebra.
 */
typedef struct DgpaAlgebra DgpaAlgebra;

/**
 * Opaque handle to a finished report.
 */
typedef struct DgpaReport DgpaReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The crate version as a static NUL-terminated string.
 */
const char *dgpa_version(void);

/**
 * Message describing the most recent failure on this thread, or NULL.
 * The pointer stays valid until the next failing call on the thread.
 */
const char *dgpa_last_error(void);

/**
 * Parses an algebra document (JSON, UTF-8). On success writes a handle
 * that must be released with `dgpa_algebra_free`.
 */
DgpaStatus dgpa_algebra_parse(const char *json, DgpaAlgebra **out);

void dgpa_algebra_free(DgpaAlgebra *alg);

/**
 * Runs the axiom battery within the window and writes a report handle.
 * Returns Ok when every check passed, CheckFailed otherwise.
 */
DgpaStatus dgpa_check(DgpaAlgebra *alg, int64_t max_degree, uintptr_t max_length, DgpaReport **out);

/**
 * Builds the universal envelope (generators-and-relations route when
 * `smash` is 0, smash-product route otherwise). The algebra must pass the
 * axiom check first; the report carries the serialized presentation.
 */
DgpaStatus dgpa_envelope(DgpaAlgebra *alg,
                         int smash,
                         int64_t max_degree,
                         uintptr_t max_length,
                         DgpaReport **out);

/**
 * Cohomology dims and induced tables; requires d^2 = 0 in the window.
 */
DgpaStatus dgpa_cohomology(const DgpaAlgebra *alg,
                           int64_t max_degree,
                           uintptr_t max_length,
                           DgpaReport **out);

/**
 * 1 when every check in the report passed, 0 otherwise.
 */
int dgpa_report_ok(const DgpaReport *report);

/**
 * The full report as a JSON string; release with `dgpa_string_free`.
 */
char *dgpa_report_json(const DgpaReport *report);

void dgpa_report_free(DgpaReport *report);

void dgpa_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DGPA_H */
