#ifndef TOPKSUM_H
#define TOPKSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TksStatus {
  TKS_STATUS_OK = 0,
  TKS_STATUS_NULL_POINTER = 1,
  TKS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The solver detected an internal inconsistency.
   */
  TKS_STATUS_INTERNAL = 3,
  TKS_STATUS_BUFFER_TOO_SMALL = 4,
  TKS_STATUS_PANIC = 5,
} TksStatus;

typedef enum TksSolver {
  TKS_SOLVER_ESGS = 0,
  TKS_SOLVER_PLCP = 1,
  TKS_SOLVER_GRID = 2,
  TKS_SOLVER_TRIVIAL = 3,
} TksSolver;

/**
 * Engine selector, passed as a plain integer so that out-of-range values
 * from C are rejected rather than undefined.
 */
typedef enum TksMethod {
  TKS_METHOD_ESGS = 0,
  TKS_METHOD_PLCP = 1,
  TKS_METHOD_GRID = 2,
} TksMethod;

/**
 * Opaque projection result.
 */
typedef struct TksResult TksResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Projects `x0[0..n]` onto `{x : sum of the k largest entries <= r}`.
 *
 * `method` is one of the [`TksMethod`] values. On success `*out` receives a
 * result owned by the caller; on failure `*out` is set to NULL.
 *
 * # Safety
 * `x0` must point to `n` readable doubles and `out` to writable storage for
 * one pointer.
 */
enum TksStatus tks_project(const double *x0,
                           size_t n,
                           size_t k,
                           double r,
                           uint32_t method,
                           struct TksResult **out);

/**
 * Like [`tks_project`] with the early-stopping engine, sorting only the
 * `l` largest entries first and escalating as needed.
 *
 * # Safety
 * Same as [`tks_project`].
 */
enum TksStatus tks_project_partial(const double *x0,
                                   size_t n,
                                   size_t k,
                                   double r,
                                   size_t l,
                                   struct TksResult **out);

/**
 * Projects `z0[0..n]` onto the ball `{z : sum of the k largest |z_i| <= r}`.
 *
 * # Safety
 * Same as [`tks_project`].
 */
enum TksStatus tks_project_vector_k_norm(const double *z0,
                                         size_t n,
                                         size_t k,
                                         double r,
                                         struct TksResult **out);

/**
 * Length of the solution vector, 0 for NULL.
 *
 * # Safety
 * `res` must be NULL or a live result.
 */
size_t tks_result_len(const struct TksResult *res);

/**
 * Copies the solution into `buf`, which must hold at least
 * [`tks_result_len`] doubles.
 *
 * # Safety
 * `res` must be a live result and `buf` must point to `len` writable doubles.
 */
enum TksStatus tks_result_copy_x(const struct TksResult *res, double *buf, size_t len);

/**
 * Multiplier of the budget constraint; NaN for NULL.
 *
 * # Safety
 * `res` must be NULL or a live result.
 */
double tks_result_lambda(const struct TksResult *res);

/**
 * Plateau value; NaN when the input was already feasible or for NULL.
 *
 * # Safety
 * `res` must be NULL or a live result.
 */
double tks_result_theta(const struct TksResult *res);

/**
 * # Safety
 * `res` must be NULL or a live result.
 */
size_t tks_result_k0(const struct TksResult *res);

/**
 * # Safety
 * `res` must be NULL or a live result.
 */
size_t tks_result_k1(const struct TksResult *res);

/**
 * # Safety
 * `res` must be NULL or a live result.
 */
size_t tks_result_iterations(const struct TksResult *res);

/**
 * Which path produced the result; `TKS_SOLVER_TRIVIAL` for NULL.
 *
 * # Safety
 * `res` must be NULL or a live result.
 */
enum TksSolver tks_result_solver(const struct TksResult *res);

/**
 * Releases a result. NULL is ignored.
 *
 * # Safety
 * `res` must be NULL or a result not yet freed.
 */
void tks_result_free(struct TksResult *res);

/**
 * Sum of the `k` largest entries of `x[0..n]`.
 *
 * # Safety
 * `x` must point to `n` readable doubles and `out` to one writable double.
 */
enum TksStatus tks_top_k_sum(const double *x, size_t n, size_t k, double *out);

/**
 * Support function of `{x : top_k_sum(x) <= r}` at `c[0..n]`; writes
 * `+inf` when unbounded.
 *
 * # Safety
 * `c` must point to `n` readable doubles and `out` to one writable double.
 */
enum TksStatus tks_support_function(const double *c, size_t n, size_t k, double r, double *out);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *tks_status_message(enum TksStatus status);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tks_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPKSUM_H */
