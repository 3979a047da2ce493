#ifndef FRACORDER_H
#define FRACORDER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Governing equations for [`fr_verify_equation`].
typedef enum FrEquation {
  // `p1 = ν`.
  FR_EQUATION_PDE_H = 0,
  // `p1 = ν`.
  FR_EQUATION_PDE_L = 1,
  // `p1 = ν1`, `p2 = ν2`.
  FR_EQUATION_PDE_COMPOSE = 2,
  // `p1 = ν`, `p2 = n`.
  FR_EQUATION_THM_L = 3,
  // `p1 = ν`, `p2 = n`.
  FR_EQUATION_THM_H = 4,
  // `p1 = n`.
  FR_EQUATION_CORO_L = 5,
  // `p1 = n`.
  FR_EQUATION_CORO_H = 6,
  // `p1 = n`, `p2 = κ`.
  FR_EQUATION_PDE_PSEUDO = 7,
  // `p1 = m`, `p2 = n`.
  FR_EQUATION_PDE_UMN = 8,
} FrEquation;

// Kernel families for [`fr_kernel_new`].
typedef enum FrKernelKind {
  // `p1 = ν`.
  FR_KERNEL_KIND_H = 0,
  // `p1 = ν`.
  FR_KERNEL_KIND_L = 1,
  // `p1 = ν`.
  FR_KERNEL_KIND_LAMPERTI = 2,
  // `p1 = ν1`, `p2 = ν2`.
  FR_KERNEL_KIND_COMPOSE = 3,
  // `p1 = m`, `p2 = n` (integers).
  FR_KERNEL_KIND_UMN = 4,
  // `p1 = n`, `p2 = κ` (integers).
  FR_KERNEL_KIND_PSEUDO = 5,
  FR_KERNEL_KIND_U1 = 6,
  FR_KERNEL_KIND_U2 = 7,
  FR_KERNEL_KIND_U3 = 8,
  // `p1 = α`.
  FR_KERNEL_KIND_FOLDED_STABLE = 9,
} FrKernelKind;

// Status codes.
typedef enum FrStatus {
  FR_STATUS_OK = 0,
  FR_STATUS_INVALID_ARGUMENT = 1,
  FR_STATUS_NON_CONVERGENCE = 2,
  FR_STATUS_QUADRATURE = 3,
  FR_STATUS_COMPLEX_RESIDUE = 4,
  FR_STATUS_DIVERGENT = 5,
  FR_STATUS_GRID_TOO_SHORT = 6,
  FR_STATUS_SINGULAR = 7,
  FR_STATUS_NON_FINITE = 8,
  FR_STATUS_NULL_POINTER = 9,
  FR_STATUS_PANIC = 10,
} FrStatus;

// A kernel with its parameters.
typedef struct FrKernel FrKernel;

// The outcome of a verification run.
typedef struct FrReport FrReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len − 1` bytes) and returns the full message length, or 0
// when there is no error.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
uintptr_t fr_last_error_message(char *buf, uintptr_t len);

// Clears the last error message of this thread.
void fr_clear_error(void);

// `Γ(x)`.
//
// # Safety
// `out` must be null or writable.
enum FrStatus fr_gamma(double x, double *out);

// Generalized Mittag-Leffler function `E_{α,β}(z)`.
//
// # Safety
// `out` must be null or writable.
enum FrStatus fr_mittag_leffler(double alpha, double beta, double z, double *out);

// Mainardi function `M_ν(z)`.
//
// # Safety
// `out` must be null or writable.
enum FrStatus fr_m_wright(double nu, double z, double *out);

// Modified Bessel function `K_ν(z)`, `z > 0`.
//
// # Safety
// `out` must be null or writable.
enum FrStatus fr_bessel_k(double nu, double z, double *out);

// Airy function `Ai(z)`.
//
// # Safety
// `out` must be null or writable.
enum FrStatus fr_airy_ai(double z, double *out);

// Left Riemann–Liouville derivative of order `alpha` of the samples
// `f[0..n]` (spacing `step`, first sample at 0), written to `out[0..n]`.
//
// # Safety
// `f` must point to `n` readable values and `out` to `n` writable ones.
enum FrStatus fr_rl_derivative(const double *f,
                               uintptr_t n,
                               double step,
                               double alpha,
                               double *out);

// Creates a kernel handle; parameters not used by `kind` are ignored.
//
// # Safety
// `out` must be null or writable.
enum FrStatus fr_kernel_new(enum FrKernelKind kind, double p1, double p2, struct FrKernel **out);

// Evaluates a kernel at `(x, t)`; `error_estimate` may be null.
//
// # Safety
// `kernel` must come from [`fr_kernel_new`] and not be freed; `value` and
// `error_estimate` must be null or writable.
enum FrStatus fr_kernel_eval(const struct FrKernel *kernel,
                             double x,
                             double t,
                             double *value,
                             double *error_estimate);

// Releases a kernel handle; null is ignored.
//
// # Safety
// `kernel` must come from [`fr_kernel_new`] and not be used afterwards.
void fr_kernel_free(struct FrKernel *kernel);

// Runs the grid-residual check of an equation on its default rectangle
// with `nodes` nodes per axis (0 for the default of 64) and tolerance
// `tol` (0 for the default of 10⁻³). A failed check still yields a
// report; only invalid parameters return an error.
//
// # Safety
// `out` must be null or writable.
enum FrStatus fr_verify_equation(enum FrEquation eq,
                                 double p1,
                                 double p2,
                                 bool caputo,
                                 uintptr_t nodes,
                                 double tol,
                                 struct FrReport **out);

// Whether the check passed.
//
// # Safety
// `report` must be null or a live handle.
bool fr_report_passed(const struct FrReport *report);

// Largest residual on the refined grid (NaN for a null handle).
//
// # Safety
// `report` must be null or a live handle.
double fr_report_max_residual(const struct FrReport *report);

// Residual decay factor under one halving (NaN for a null handle).
//
// # Safety
// `report` must be null or a live handle.
double fr_report_refinement_ratio(const struct FrReport *report);

// The report line `<id> <max> <rms> <ratio> PASS|FAIL`, valid until the
// report is freed (null for a null handle).
//
// # Safety
// `report` must be null or a live handle.
const char *fr_report_line(const struct FrReport *report);

// Releases a report; null is ignored.
//
// # Safety
// `report` must come from [`fr_verify_equation`] and not be used afterwards.
void fr_report_free(struct FrReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACORDER_H */
