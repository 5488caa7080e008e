#ifndef MOTIVIC_HALL_H
#define MOTIVIC_HALL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MhStatus {
  MH_STATUS_OK = 0,
  MH_STATUS_NULL_POINTER = 1,
  MH_STATUS_INVALID_ARGUMENT = 2,
  MH_STATUS_PARSE = 3,
  MH_STATUS_NOT_REGULAR = 4,
  MH_STATUS_NOT_IN_RING = 5,
  MH_STATUS_BUDGET_EXCEEDED = 6,
  MH_STATUS_WINDOW_EXCEEDED = 7,
  MH_STATUS_INTERPOLATION_MISMATCH = 8,
  MH_STATUS_UNSTABLE_LABELS = 9,
  MH_STATUS_IO = 10,
  MH_STATUS_PANIC = 11,
  MH_STATUS_OTHER = 12,
} MhStatus;

/**
 * A Hall algebra context.
 */
typedef struct MhAlgebra MhAlgebra;

/**
 * A motivic class.
 */
typedef struct MhClass MhClass;

/**
 * A Hall algebra element.
 */
typedef struct MhElement MhElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *mh_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void mh_string_free(char *s);

/**
 * The class of `GL_d`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MhStatus mh_class_gl(int64_t d, struct MhClass **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MhStatus mh_class_from_json(const char *json, struct MhClass **out);

/**
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum MhStatus mh_class_to_json(const struct MhClass *c, char **out);

/**
 * Human-readable form such as `L^2 - 1`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum MhStatus mh_class_to_string(const struct MhClass *c, char **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum MhStatus mh_class_add(const struct MhClass *a, const struct MhClass *b, struct MhClass **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum MhStatus mh_class_mul(const struct MhClass *a, const struct MhClass *b, struct MhClass **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum MhStatus mh_class_equal(const struct MhClass *a, const struct MhClass *b, bool *out);

/**
 * Value at `L = q`, as a decimal fraction string.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum MhStatus mh_class_specialize(const struct MhClass *c, int64_t q, char **out);

/**
 * Euler characteristic; fails with `NotRegular` when the class has a pole at `L = 1`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum MhStatus mh_class_euler_characteristic(const struct MhClass *c, int64_t *out);

/**
 * # Safety
 * `c` must come from this library, or be null.
 */
void mh_class_free(struct MhClass *c);

/**
 * Creates an algebra for a quiver given as JSON (`null` for A2), with window
 * "total dimension at most `max_total`" and the given sample fields.
 *
 * # Safety
 * `quiver_json` must be null or NUL-terminated; `primes` must point to `num_primes` values.
 */
enum MhStatus mh_algebra_new(const char *quiver_json,
                             uint32_t max_total,
                             const uint32_t *primes,
                             size_t num_primes,
                             uint64_t budget,
                             struct MhAlgebra **out);

/**
 * # Safety
 * `a` must come from this library, or be null.
 */
void mh_algebra_free(struct MhAlgebra *a);

/**
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum MhStatus mh_algebra_unit(const struct MhAlgebra *alg, struct MhElement **out);

/**
 * Parses `{"terms": [{"class": ..., "coeff": ...}]}` against the algebra's quiver.
 *
 * # Safety
 * `alg` must be a live handle, `json` NUL-terminated and `out` a valid pointer.
 */
enum MhStatus mh_element_from_json(const struct MhAlgebra *alg,
                                   const char *json,
                                   struct MhElement **out);

/**
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum MhStatus mh_element_to_json(const struct MhElement *x, char **out);

/**
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum MhStatus mh_element_is_regular(const struct MhElement *x, bool *out);

/**
 * # Safety
 * `x` must come from this library, or be null.
 */
void mh_element_free(struct MhElement *x);

/**
 * Hall product, left factor the subobject.
 *
 * # Safety
 * All handles must be live and `out` a valid pointer.
 */
enum MhStatus mh_algebra_mul(const struct MhAlgebra *alg,
                             const struct MhElement *x,
                             const struct MhElement *y,
                             struct MhElement **out);

/**
 * `(x*y - y*x) / (L - 1)`.
 *
 * # Safety
 * All handles must be live and `out` a valid pointer.
 */
enum MhStatus mh_algebra_bracket(const struct MhAlgebra *alg,
                                 const struct MhElement *x,
                                 const struct MhElement *y,
                                 struct MhElement **out);

/**
 * Runs a verification suite. `weight` is "one" or "behrend", `sigma` is +1 or -1.
 * `passed` receives the verdict and `report` the JSON reports.
 *
 * # Safety
 * `alg` must be a live handle, strings NUL-terminated, outputs valid pointers.
 */
enum MhStatus mh_verify(const struct MhAlgebra *alg,
                        const char *suite,
                        const char *weight,
                        int32_t sigma,
                        bool *passed,
                        char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOTIVIC_HALL_H */
