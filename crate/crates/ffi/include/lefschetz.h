#ifndef LEFSCHETZ_H
#define LEFSCHETZ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LzStatus {
  LZ_STATUS_OK = 0,
  /**
   * Input rejected: genericity, parsing, unknown labels.
   */
  LZ_STATUS_INVALID = 1,
  /**
   * Internal inconsistency such as a contradictory table or lost track.
   */
  LZ_STATUS_INCONSISTENT = 2,
  LZ_STATUS_NULL_POINTER = 3,
  LZ_STATUS_INVALID_UTF8 = 4,
  LZ_STATUS_PANIC = 5,
} LzStatus;

/**
 * Opaque scenario handle.
 */
typedef struct LzScenario LzScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error of this thread as JSON. Valid until the next call on the
 * same thread; do not free.
 */
const char *lz_last_error(void);

/**
 * Library version, static storage.
 */
const char *lz_version(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void lz_string_free(char *s);

/**
 * Parses and validates a scenario JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LzStatus lz_scenario_from_json(const char *json, struct LzScenario **out);

/**
 * Built-in generic scenario for (a, n).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LzStatus lz_scenario_generate(size_t a, size_t n, struct LzScenario **out);

/**
 * # Safety
 * `s` must come from `lz_scenario_*` or be null; it is invalid afterwards.
 */
void lz_scenario_free(struct LzScenario *s);

/**
 * Genericity report.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum LzStatus lz_validation_report(const struct LzScenario *s, char **out);

/**
 * Labelled basis; `which` is one of "gR", "hS", "f", "fF".
 *
 * # Safety
 * Valid handle, NUL-terminated `which`, valid output pointer.
 */
enum LzStatus lz_basis(const struct LzScenario *s, const char *which, char **out);

/**
 * Intersection matrix with the table comparison.
 *
 * # Safety
 * As `lz_basis`.
 */
enum LzStatus lz_gram(const struct LzScenario *s, const char *which, char **out);

/**
 * Monodromy operator of `value` ("c2", "t3", or "c1+c2" in dimension one).
 * With `oracle` nonzero the dimension-0 continuation check is included.
 *
 * # Safety
 * As `lz_basis`, plus NUL-terminated `value`.
 */
enum LzStatus lz_monodromy(const struct LzScenario *s,
                           const char *which,
                           const char *value,
                           int32_t oracle,
                           char **out);

/**
 * Orbit lattice of the cycle labelled `seed`.
 *
 * # Safety
 * As `lz_monodromy`.
 */
enum LzStatus lz_orbit(const struct LzScenario *s, const char *which, const char *seed, char **out);

/**
 * ker F_* report.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum LzStatus lz_kernel_report(const struct LzScenario *s, char **out);

/**
 * Dynkin diagram in DOT.
 *
 * # Safety
 * As `lz_basis`.
 */
enum LzStatus lz_dynkin_dot(const struct LzScenario *s, const char *which, char **out);

/**
 * Petrov decomposition of a form {"P":..,"Q":..} over a polynomial {"terms":..}.
 *
 * # Safety
 * NUL-terminated JSON inputs and a valid output pointer.
 */
enum LzStatus lz_petrov_decompose(const char *form, const char *l, char **out);

/**
 * C for d = an+n−1.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LzStatus lz_pullback_cyclicity(int64_t a, int64_t n, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEFSCHETZ_H */
