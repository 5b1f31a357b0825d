#ifndef WEIL_JACOBI_H
#define WEIL_JACOBI_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first three match the command-line exit codes.
 */
typedef enum WjStatus {
  WJ_STATUS_OK = 0,
  WJ_STATUS_IDENTITY_FAILURE = 1,
  WJ_STATUS_STRUCTURAL = 2,
  WJ_STATUS_PARSE = 3,
  WJ_STATUS_NULL_ARGUMENT = 4,
  WJ_STATUS_INVALID_UTF8 = 5,
  WJ_STATUS_PANIC = 6,
} WjStatus;

/**
 * Parsed problem file.
 */
typedef struct WjProblem WjProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses problem-file text into a new handle stored in `*out`.
 *
 * # Safety
 * `source` must be a nul-terminated string and `out` a valid pointer.
 */
enum WjStatus wj_problem_parse(const char *source, struct WjProblem **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `problem` must come from `wj_problem_parse` and not be freed twice.
 */
void wj_problem_free(struct WjProblem *problem);

/**
 * Structural validation. Writes the JSON report to `*json_out`.
 *
 * # Safety
 * `problem` must be a live handle and `json_out` a valid pointer.
 */
enum WjStatus wj_validate(const struct WjProblem *problem, char **json_out);

/**
 * Runs identity suites. `suite` is a suite name, `"all"`, or null for the
 * file's own list. `samples == 0` is rejected.
 *
 * # Safety
 * `problem` must be a live handle, `suite` null or a nul-terminated string,
 * and `json_out` a valid pointer.
 */
enum WjStatus wj_check(const struct WjProblem *problem,
                       const char *suite,
                       uint64_t seed,
                       size_t samples,
                       char **json_out);

/**
 * Evaluates `{f, g}` and writes its canonical text to `*out`.
 *
 * # Safety
 * `problem` must be a live handle, `f` and `g` nul-terminated strings and
 * `out` a valid pointer.
 */
enum WjStatus wj_bracket(const struct WjProblem *problem, const char *f, const char *g, char **out);

/**
 * Frees a string returned through an out-pointer. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void wj_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *wj_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEIL_JACOBI_H */
