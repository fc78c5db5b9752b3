#ifndef HARDY_POINTS_H
#define HARDY_POINTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Formula selector for [`hp_approx_new`].
 */
#define HP_FORM_I 1

#define HP_FORM_II 2

typedef enum HpStatus {
  HP_STATUS_OK = 0,
  HP_STATUS_NULL_POINTER = 1,
  HP_STATUS_INVALID_ARGUMENT = 2,
  HP_STATUS_UNKNOWN_NAME = 3,
  HP_STATUS_NO_CONVERGENCE = 4,
  HP_STATUS_NUMERICAL = 5,
  HP_STATUS_BUFFER_TOO_SMALL = 6,
  HP_STATUS_PANIC = 7,
} HpStatus;

typedef struct HpApproximant HpApproximant;

typedef struct HpSolution HpSolution;

typedef struct HpWeight HpWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *hp_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hp_version(void);

/**
 * Creates a built-in weight by name (`"w1"` .. `"w7"`).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum HpStatus hp_weight_new(const char *name, double epsilon, struct HpWeight **out);

/**
 * # Safety
 * `weight` must be null or a handle from [`hp_weight_new`] not yet freed.
 */
void hp_weight_free(struct HpWeight *weight);

/**
 * Strip half-width `d` of the weight.
 *
 * # Safety
 * `weight` must be a live handle and `out` writable.
 */
enum HpStatus hp_weight_d(const struct HpWeight *weight, double *out);

/**
 * Evaluates `w(x)`.
 *
 * # Safety
 * `weight` must be a live handle and `out` writable.
 */
enum HpStatus hp_weight_eval(const struct HpWeight *weight, double x, double *out);

/**
 * Computes the `n` optimal points. `damping = 0` takes full Newton steps.
 *
 * # Safety
 * `weight` must be a live handle and `out` writable.
 */
enum HpStatus hp_solve(const struct HpWeight *weight,
                       size_t n,
                       int damping,
                       struct HpSolution **out);

/**
 * # Safety
 * `solution` must be null or a handle from [`hp_solve`] not yet freed.
 */
void hp_solution_free(struct HpSolution *solution);

/**
 * Number of points; 0 for a null handle.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
size_t hp_solution_len(const struct HpSolution *solution);

/**
 * Copies the points into `buf`, which must hold at least `len` values.
 *
 * # Safety
 * `solution` must be a live handle and `buf` valid for `len` writes.
 */
enum HpStatus hp_solution_points(const struct HpSolution *solution, double *buf, size_t len);

/**
 * Energy constant `F` and certificate `exp(-F/n)`; either output may be null.
 *
 * # Safety
 * `solution` must be a live handle; non-null outputs must be writable.
 */
enum HpStatus hp_solution_report(const struct HpSolution *solution,
                                 double *f_d,
                                 double *certificate,
                                 size_t *iterations);

/**
 * Builds an interpolant from `values[i] = f(a_i)` at the solution points.
 *
 * # Safety
 * Handles must be live, `values` valid for `len` reads, `out` writable.
 */
enum HpStatus hp_approx_new(const struct HpWeight *weight,
                            const struct HpSolution *solution,
                            const double *values,
                            size_t len,
                            int form,
                            struct HpApproximant **out);

/**
 * # Safety
 * `approx` must be null or a handle from [`hp_approx_new`] not yet freed.
 */
void hp_approx_free(struct HpApproximant *approx);

/**
 * Evaluates the interpolant at `x`.
 *
 * # Safety
 * `approx` must be a live handle and `out` writable.
 */
enum HpStatus hp_approx_eval(const struct HpApproximant *approx, double x, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARDY_POINTS_H */
