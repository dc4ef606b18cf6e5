#ifndef FERMICORR_H
#define FERMICORR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_POINTER = 1,
  FC_STATUS_INVALID_ARGUMENT = 2,
  FC_STATUS_INVALID_STATE = 3,
  FC_STATUS_UNSUPPORTED = 4,
  FC_STATUS_SOLVER_FAILURE = 5,
  FC_STATUS_BRACKET_FAILURE = 6,
  FC_STATUS_BOUND_VIOLATION = 7,
  FC_STATUS_PANIC = 8,
} FcStatus;

typedef enum FcPicture {
  FC_PICTURE_MODE = 0,
  FC_PICTURE_PARTICLE = 1,
} FcPicture;

typedef enum FcMethod {
  FC_METHOD_EXACT = 0,
  FC_METHOD_LOW_T = 1,
  FC_METHOD_ASYMPTOTIC = 2,
} FcMethod;

/*
 Settings for the entanglement minimization.
 */
typedef struct FcSolverConfig FcSolverConfig;

/*
 A fermionic density matrix.
 */
typedef struct FcState FcState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *fc_version(void);

/*
 Copies the calling thread's last error message into `buf` (truncated,
 always NUL-terminated when `len > 0`) and returns the full message length
 without the terminator; 0 when there is no error.

 # Safety
 `buf` must be null or valid for `len` bytes.
 */
size_t fc_last_error(char *buf, size_t len);

/*
 The six dimer energies at distance `r`, ascending, into `energies[0..6]`.

 # Safety
 `energies` must be valid for six writes.
 */
enum FcStatus fc_dimer_spectrum(double r, double *energies);

/*
 Canonical two-electron Gibbs state of the dimer; `temperature == 0`
 gives the ground state.

 # Safety
 `out` must be valid for one write.
 */
enum FcStatus fc_state_dimer_thermal(double temperature, double r, struct FcState **out);

/*
 `0`: the dissociated singlet, `1`: the equal covalent mixture.

 # Safety
 `out` must be valid for one write.
 */
enum FcStatus fc_state_dissociated(uint32_t which, struct FcState **out);

/*
 State on the full Fock space of `modes` modes from row-major real and
 imaginary parts, each `4^modes` long. `imag` may be null.

 # Safety
 `real` (and `imag` if non-null) must be valid for `4^modes` reads; `out`
 for one write.
 */
enum FcStatus fc_state_from_matrix(size_t modes,
                                   const double *real,
                                   const double *imag,
                                   struct FcState **out);

/*
 # Safety
 `state` must be null or a handle from this library not yet freed.
 */
void fc_state_free(struct FcState *state);

/*
 Number of modes of `state`.

 # Safety
 `state` must be a live handle and `out` valid for one write.
 */
enum FcStatus fc_state_modes(const struct FcState *state, size_t *out);

/*
 Mutual information between the modes in `block_a` and the rest, after
 the local-number projection when `ssr` is non-zero.

 # Safety
 `state` must be live, `block_a` valid for `len_a` reads, `out` for one
 write.
 */
enum FcStatus fc_mode_correlation(const struct FcState *state,
                                  const size_t *block_a,
                                  size_t len_a,
                                  int32_t ssr,
                                  double *out);

/*
 A solver configuration with default settings.
 */
struct FcSolverConfig *fc_solver_config_new(void);

/*
 # Safety
 `config` must be null or a live handle.
 */
void fc_solver_config_free(struct FcSolverConfig *config);

/*
 Sets the initial component count, restart count, seed and stagnation
 tolerance in one call.

 # Safety
 `config` must be a live handle.
 */
enum FcStatus fc_solver_config_set(struct FcSolverConfig *config,
                                   size_t components,
                                   size_t restarts,
                                   uint64_t seed,
                                   double tol);

/*
 Relative entropy of entanglement for the bipartition `block_a` vs the
 rest. `config` may be null for the defaults.

 # Safety
 As for [`fc_mode_correlation`]; `config` must be null or live.
 */
enum FcStatus fc_mode_entanglement(const struct FcState *state,
                                   const size_t *block_a,
                                   size_t len_a,
                                   int32_t ssr,
                                   const struct FcSolverConfig *config,
                                   double *out);

/*
 # Safety
 `state` must be live and `out` valid for one write.
 */
enum FcStatus fc_nonfreeness(const struct FcState *state, double *out);

/*
 Only defined for two fermions in four modes.

 # Safety
 `state` must be live and `out` valid for one write.
 */
enum FcStatus fc_quantum_nonfreeness(const struct FcState *state, double *out);

/*
 Critical distance of entanglement sudden death.

 # Safety
 `out` must be valid for one write.
 */
enum FcStatus fc_critical_distance(enum FcPicture picture,
                                   enum FcMethod method,
                                   double temperature,
                                   double *out);

/*
 Mutual information of the grand-canonical dimer state and its bound
 `2‖H_LR‖_F / T`. Both outputs are written even when the bound fails, in
 which case the status is `BoundViolation`.

 # Safety
 `mutual_info` and `rhs` must be valid for one write each.
 */
enum FcStatus fc_wolf_bound(double temperature, double r, double *mutual_info, double *rhs);

/*
 Reads a NUL-terminated UTF-8 grid such as `"0:1:0.25"` and reports how
 many points it holds.

 # Safety
 `spec` must be a valid C string; `count` valid for one write.
 */
enum FcStatus fc_grid_len(const char *spec, size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FERMICORR_H */
