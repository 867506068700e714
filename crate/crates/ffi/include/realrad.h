#ifndef REALRAD_H
#define REALRAD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RealradStatus {
  REALRAD_STATUS_OK = 0,
  REALRAD_STATUS_NULL_ARGUMENT = 1,
  REALRAD_STATUS_INVALID_UTF8 = 2,
  REALRAD_STATUS_PARSE = 3,
  REALRAD_STATUS_INVALID_INPUT = 4,
  REALRAD_STATUS_NUMERICAL = 5,
  REALRAD_STATUS_PANIC = 6,
} RealradStatus;

// Outcome of a sweep; values match the CLI exit codes.
typedef enum RealradRunStatus {
  REALRAD_RUN_STATUS_CERTIFIED = 0,
  REALRAD_RUN_STATUS_EXHAUSTED_T = 2,
  REALRAD_RUN_STATUS_INFEASIBLE = 3,
} RealradRunStatus;

// Opaque result of a run.
typedef struct RealradReport RealradReport;

// Run options. Zero orders mean "automatic"; a non-positive ball radius
// disables the ball constraint.
typedef struct RealradOptions {
  double tau;
  uint32_t t_start;
  uint32_t t_max;
  double ball;
  uint64_t seed;
  double rational_tol;
  bool auto_retry;
} RealradOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Default options (τ = 1e-8, automatic orders, no ball, seed 0).
struct RealradOptions realrad_options_default(void);

// Run the sweep on an input system given as text. `matrix` is an optional
// coordinate change (same format as the CLI `--coord-change` file) and may
// be NULL, as may `options`. On success `*out` receives a report to be
// released with `realrad_report_free`.
//
// # Safety
// `text` and a non-NULL `matrix` must be NUL-terminated strings, `options`
// NULL or valid, `out` a valid pointer.
enum RealradStatus realrad_run_text(const char *text,
                                    const char *matrix,
                                    const struct RealradOptions *options,
                                    struct RealradReport **out);

// # Safety
// `report` must be NULL or a live handle from `realrad_run_text`.
void realrad_report_free(struct RealradReport *report);

// # Safety
// `report` must be a live handle.
enum RealradRunStatus realrad_report_status(const struct RealradReport *report);

// Certified order, or -1.
//
// # Safety
// `report` must be NULL or a live handle.
int32_t realrad_report_certified_t(const struct RealradReport *report);

// Whether the strong basis carries exact rational coefficients.
//
// # Safety
// `report` must be NULL or a live handle.
bool realrad_report_is_exact(const struct RealradReport *report);

// Number of strong basis elements.
//
// # Safety
// `report` must be NULL or a live handle.
uintptr_t realrad_report_basis_len(const struct RealradReport *report);

// Element `i` of the strong basis as text, or NULL when out of range.
// Free with `realrad_string_free`.
//
// # Safety
// `report` must be NULL or a live handle.
char *realrad_report_basis_element(const struct RealradReport *report, uintptr_t i);

// Full report as pretty-printed JSON. Free with `realrad_string_free`.
//
// # Safety
// `report` must be NULL or a live handle.
char *realrad_report_json(const struct RealradReport *report);

// The per-order table printed by the CLI. Free with `realrad_string_free`.
//
// # Safety
// `report` must be NULL or a live handle.
char *realrad_report_table(const struct RealradReport *report);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void realrad_string_free(char *s);

// Message of the last failure on this thread, or NULL. Valid until the
// next call into the library from the same thread.
const char *realrad_last_error(void);

// Library version, static storage.
const char *realrad_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REALRAD_H */
