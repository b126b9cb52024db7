#ifndef WIGNERNEG_H
#define WIGNERNEG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every exported function.
typedef enum WnStatus {
  WN_STATUS_OK = 0,
  WN_STATUS_NULL_POINTER = 1,
  WN_STATUS_INVALID_UTF8 = 2,
  WN_STATUS_PARSE = 3,
  WN_STATUS_INVALID_ARGUMENT = 4,
  WN_STATUS_INVALID_GRID = 5,
  WN_STATUS_GRID_MISMATCH = 6,
  WN_STATUS_UNNORMALIZED = 7,
  WN_STATUS_NON_CONVERGENCE = 8,
  WN_STATUS_OUT_OF_DOMAIN = 9,
  WN_STATUS_DEGENERATE_CONDITIONING = 10,
  WN_STATUS_UNDEFINED_STATE = 11,
  WN_STATUS_UNSUPPORTED = 12,
  WN_STATUS_WINDOW = 13,
  WN_STATUS_IO = 14,
  WN_STATUS_BUFFER_TOO_SMALL = 15,
  WN_STATUS_PANIC = 16,
} WnStatus;

// Sampled Wigner function.
typedef struct WnField WnField;

// Aggregates of a distillation sweep.
typedef struct WnDistillSummary {
  double p_suc;
  double avg_neg;
  double post_neg;
  double ini_neg;
  double window_lo;
  double window_hi;
} WnDistillSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null if none. The
// pointer stays valid until the next failing call on the same thread.
const char *wn_last_error(void);

// Static description of a status code.
const char *wn_status_str(enum WnStatus status);

// Samples the state described by `spec` (e.g. `cubic:gamma=0.05,P=0,s=1`)
// on its automatic grid.
//
// # Safety
// `spec` must be a nul-terminated string and `out` a valid pointer.
enum WnStatus wn_state_new(const char *spec, struct WnField **out);

// Samples `spec` on the grid `[-q_max, q_max] × [p_min, p_max]` with
// `n_q × n_p` nodes.
//
// # Safety
// `spec` must be a nul-terminated string and `out` a valid pointer.
enum WnStatus wn_state_new_on_grid(const char *spec,
                                   double q_max,
                                   uintptr_t n_q,
                                   double p_min,
                                   double p_max,
                                   uintptr_t n_p,
                                   struct WnField **out);

// Releases a field; null is ignored.
//
// # Safety
// `field` must come from this library and not be used afterwards.
void wn_field_free(struct WnField *field);

// Node counts of the q and p axes.
//
// # Safety
// All pointers must be valid.
enum WnStatus wn_field_dims(const struct WnField *field, uintptr_t *n_q, uintptr_t *n_p);

// Axis bounds `[q_min, q_max, p_min, p_max]`.
//
// # Safety
// `bounds` must point to four writable doubles.
enum WnStatus wn_field_bounds(const struct WnField *field, double *bounds);

// Copies the samples (row-major, p fastest) into `buf` of length `len`.
//
// # Safety
// `buf` must point to `len` writable doubles.
enum WnStatus wn_field_samples(const struct WnField *field, double *buf, uintptr_t len);

// Quadrature of the field over its grid.
//
// # Safety
// All pointers must be valid.
enum WnStatus wn_field_integral(const struct WnField *field, double *out);

// Logarithmic negativity `ln ∫|W|`.
//
// # Safety
// All pointers must be valid.
enum WnStatus wn_log_negativity(const struct WnField *field, double *out);

// Mean photon number by quadrature.
//
// # Safety
// All pointers must be valid.
enum WnStatus wn_mean_photon(const struct WnField *field, double *out);

// Fidelity `4π ∫ W W_target` of `field` with the pure state `target`.
//
// # Safety
// All pointers must be valid.
enum WnStatus wn_fidelity(const struct WnField *field, const struct WnField *target, double *out);

// Writes the field as CSV `q,p,w`.
//
// # Safety
// `path` must be a nul-terminated string.
enum WnStatus wn_field_save_csv(const struct WnField *field, const char *path);

// Runs the beam-splitter / homodyne distillation on `input` with
// transmittance `t`, choosing the window with success probability `p_suc`
// that maximizes the negativity.
//
// # Safety
// All pointers must be valid.
enum WnStatus wn_distill(const struct WnField *input,
                         double t,
                         double p_suc,
                         struct WnDistillSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WIGNERNEG_H */
