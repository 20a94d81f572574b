#ifndef WALK_KERNEL_H
#define WALK_KERNEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WkStatus {
  WK_STATUS_OK = 0,
  WK_STATUS_NULL_POINTER = 1,
  WK_STATUS_INVALID_ARGUMENT = 2,
  WK_STATUS_UNKNOWN_MODEL = 3,
  WK_STATUS_COMPUTATION = 4,
  WK_STATUS_PANIC = 5,
  /**
   * The query has no value for this report, e.g. `k` of a transcendental verdict.
   */
  WK_STATUS_NO_VALUE = 6,
} WkStatus;

/**
 * A step set with rational weights.
 */
typedef struct WkModel WkModel;

/**
 * The outcome of a classification.
 */
typedef struct WkReport WkReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failing call on this thread, or "" after a
 * success. The pointer stays valid until the next call on the same thread.
 */
const char *wk_last_error(void);

/**
 * Library version as a static string.
 */
const char *wk_version(void);

/**
 * Looks up a built-in model by name.
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` is valid for writes.
 */
enum WkStatus wk_model_builtin(const char *name, struct WkModel **out);

/**
 * Parses a model file of the form `{"d": {"i,j": "p/q", ...}, "name": ...}`.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is valid for writes.
 */
enum WkStatus wk_model_from_json(const char *json, struct WkModel **out);

/**
 * # Safety
 * `model` is NULL or came from `wk_model_builtin`/`wk_model_from_json` and
 * has not been freed.
 */
void wk_model_free(struct WkModel *model);

/**
 * Classifies `model`. `t_samples` is a comma-separated list of rationals in
 * (0, 1), or NULL for the defaults; `k_max` or `n_max` of 0 selects the
 * default bound.
 *
 * # Safety
 * `model` is a live model handle, `t_samples` is NULL or a NUL-terminated
 * string, and `out` is valid for writes.
 */
enum WkStatus wk_classify(const struct WkModel *model,
                          const char *t_samples,
                          uint32_t k_max,
                          uint32_t n_max,
                          struct WkReport **out);

/**
 * # Safety
 * `report` is NULL or came from `wk_classify` and has not been freed.
 */
void wk_report_free(struct WkReport *report);

/**
 * Verdict name, e.g. `"DAlgebraic"`. Free with `wk_string_free`.
 *
 * # Safety
 * `report` is a live report handle; `out` is valid for writes.
 */
enum WkStatus wk_report_verdict(const struct WkReport *report, char **out);

/**
 * The orbit index `k` of a D-algebraic verdict; `WK_STATUS_NO_VALUE` otherwise.
 *
 * # Safety
 * `report` is a live report handle; `out` is valid for writes.
 */
enum WkStatus wk_report_k(const struct WkReport *report, int64_t *out);

/**
 * The full report as JSON. Free with `wk_string_free`.
 *
 * # Safety
 * `report` is a live report handle; `out` is valid for writes.
 */
enum WkStatus wk_report_json(const struct WkReport *report, char **out);

/**
 * Checks the three functional equations up to `t^order`. `all_zero` is set
 * to whether every residual vanishes.
 *
 * # Safety
 * `model` is a live model handle, `t` is a NUL-terminated rational such as
 * `"1/2"`, and `all_zero` is valid for writes.
 */
enum WkStatus wk_verify(const struct WkModel *model, const char *t, uint32_t order, bool *all_zero);

/**
 * Weighted walk counts up to length `n` as CSV rows `n,i,j,"p/q"`. Free
 * with `wk_string_free`.
 *
 * # Safety
 * `model` is a live model handle; `out` is valid for writes.
 */
enum WkStatus wk_enumerate_csv(const struct WkModel *model, uint32_t n, char **out);

/**
 * # Safety
 * `s` is NULL or a string returned by this library that has not been freed.
 */
void wk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WALK_KERNEL_H */
