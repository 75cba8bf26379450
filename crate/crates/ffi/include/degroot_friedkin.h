#ifndef DEGROOT_FRIEDKIN_H
#define DEGROOT_FRIEDKIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DfStatus {
  DF_STATUS_OK = 0,
  DF_STATUS_NULL_POINTER = 1,
  DF_STATUS_INVALID_INPUT = 2,
  DF_STATUS_DIMENSION_MISMATCH = 3,
  DF_STATUS_NO_CONVERGENCE = 4,
  DF_STATUS_SUM_DRIFT = 5,
  DF_STATUS_IO = 6,
  DF_STATUS_PANIC = 7,
} DfStatus;

/**
 * Model codes accepted by `df_simulate`.
 */
enum DfModel
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  DF_MODEL_MODIFIED = 0,
  DF_MODEL_ORIGINAL = 1,
  DF_MODEL_FINITE_T = 2,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum DfModel DfModel;
#else
typedef uint32_t DfModel;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Interaction matrix handle.
 */
typedef struct DfMatrix DfMatrix;

/**
 * Recorded trajectory handle.
 */
typedef struct DfTrajectory DfTrajectory;

typedef struct DfReport {
  bool converged;
  size_t issues_used;
  /**
   * Last successive-state distance; infinite for a single-state run.
   */
  double final_residual;
  bool min_monotone;
  bool max_monotone;
  bool lyapunov_nonincreasing;
  bool n2_warning;
} DfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *df_last_error(void);

/**
 * Validates an `n x n` row-major interaction matrix.
 */
enum DfStatus df_matrix_new(const double *entries, size_t n, struct DfMatrix **out);

/**
 * Built-in matrix: `complete`, `ring`, `c1` or `c2`.
 */
enum DfStatus df_matrix_preset(const char *name, struct DfMatrix **out);

/**
 * Seeded random matrix on the complete graph; `doubly` selects Sinkhorn
 * balancing with the default tolerance.
 */
enum DfStatus df_matrix_generate(size_t n, bool doubly, uint64_t seed, struct DfMatrix **out);

/**
 * Dimension of a matrix; 0 for NULL.
 */
size_t df_matrix_n(const struct DfMatrix *c);

bool df_matrix_is_doubly_stochastic(const struct DfMatrix *c);

void df_matrix_free(struct DfMatrix *c);

enum DfStatus df_modified_step(const struct DfMatrix *c, const double *x, size_t n, double *out);

enum DfStatus df_original_step(const struct DfMatrix *c, const double *x, size_t n, double *out);

enum DfStatus df_finite_t_step(const struct DfMatrix *c,
                               const double *x,
                               size_t n,
                               uint32_t t_steps,
                               double *out);

/**
 * Sup-norm residual of the Modified map at `x`.
 */
enum DfStatus df_verify_equilibrium(const struct DfMatrix *c,
                                    const double *x,
                                    size_t n,
                                    double *residual);

/**
 * Roots of `x - x^2 = a (n-1) / n^2`.
 */
enum DfStatus df_quadratic_roots(double a, size_t n, double *low, double *high);

/**
 * Runs a model from `x0`. `model` is a `DfModel` code; `t_steps` is only
 * read for `DF_MODEL_FINITE_T`. A run that hits `max_issues` still returns
 * `DF_STATUS_OK`; check `df_trajectory_converged`.
 */
enum DfStatus df_simulate(const struct DfMatrix *c,
                          const double *x0,
                          size_t n,
                          uint32_t model,
                          uint32_t t_steps,
                          size_t max_issues,
                          double stop_tol,
                          struct DfTrajectory **out);

/**
 * Runs a named preset (for example `ring-fig5`) with the Modified map.
 */
enum DfStatus df_preset_run(const char *name,
                            size_t max_issues,
                            double stop_tol,
                            struct DfTrajectory **out);

/**
 * Number of recorded states (issues + 1); 0 for NULL.
 */
size_t df_trajectory_len(const struct DfTrajectory *t);

/**
 * Dimension of the states; 0 for NULL.
 */
size_t df_trajectory_n(const struct DfTrajectory *t);

bool df_trajectory_converged(const struct DfTrajectory *t);

/**
 * Copies state `issue` into `out` (`n` doubles).
 */
enum DfStatus df_trajectory_state(const struct DfTrajectory *t,
                                  size_t issue,
                                  double *out,
                                  size_t n);

void df_trajectory_free(struct DfTrajectory *t);

/**
 * Convergence and monotonicity verdicts; the limit is the last state.
 */
enum DfStatus df_analyze(const struct DfTrajectory *t,
                         const struct DfMatrix *c,
                         struct DfReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEGROOT_FRIEDKIN_H */
