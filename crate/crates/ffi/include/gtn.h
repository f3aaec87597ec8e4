#ifndef GTN_H
#define GTN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Reduced states of the five-mode system, named by the modes they keep.
 */
typedef enum GtnReducedState {
  GTN_REDUCED_STATE_A_BI_CI = 0,
  GTN_REDUCED_STATE_A_BI_CII = 1,
  GTN_REDUCED_STATE_A_BII_CI = 2,
  GTN_REDUCED_STATE_A_BII_CII = 3,
  GTN_REDUCED_STATE_A_BI_BII = 4,
  GTN_REDUCED_STATE_A_CI_CII = 5,
  GTN_REDUCED_STATE_BI_BII = 6,
  GTN_REDUCED_STATE_CI_CII = 7,
  GTN_REDUCED_STATE_A_BI = 8,
  GTN_REDUCED_STATE_A_CI = 9,
  GTN_REDUCED_STATE_BI_CI = 10,
  GTN_REDUCED_STATE_BII_CII = 11,
  GTN_REDUCED_STATE_A_BII = 12,
  GTN_REDUCED_STATE_A_CII = 13,
  GTN_REDUCED_STATE_BI_CII = 14,
  GTN_REDUCED_STATE_BII_CI = 15,
} GtnReducedState;

typedef enum GtnStatus {
  GTN_STATUS_OK = 0,
  GTN_STATUS_NULL_POINTER = 1,
  GTN_STATUS_INVALID_PARAMETER = 2,
  GTN_STATUS_INVALID_STATE = 3,
  /**
   * The measure is not defined for the requested reduction.
   */
  GTN_STATUS_NOT_APPLICABLE = 4,
  GTN_STATUS_BUFFER_TOO_SMALL = 5,
  GTN_STATUS_PANIC = 6,
} GtnStatus;

/**
 * Opaque density operator on two or three qubits.
 */
typedef struct GtnDensity GtnDensity;

/**
 * Opaque scenario: α, ω and the Hawking temperature.
 */
typedef struct GtnScenario GtnScenario;

/**
 * Residuals of the monogamy relations at one scenario.
 */
typedef struct GtnMonogamy {
  double linear_residual;
  double quadratic_residual;
  double weighted_residual;
  /**
   * Smallest CKW slack over the three focus modes; negative means violated.
   */
  double ckw_min_slack;
  /**
   * Nonzero when every relation above holds.
   */
  int32_t all_hold;
} GtnMonogamy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *gtn_last_error(void);

/**
 * Hawking temperature 1/(8πM).
 *
 * # Safety
 * `out` must be null or valid for a write of one `double`.
 */
enum GtnStatus gtn_hawking_temperature(double mass, double *out);

/**
 * Creates a scenario from α, ω and a temperature (zero allowed).
 *
 * # Safety
 * `out` must be null or valid for a write of one pointer.
 */
enum GtnStatus gtn_scenario_new(double alpha,
                                double omega,
                                double temperature,
                                struct GtnScenario **out);

/**
 * Creates a scenario whose temperature follows from the black hole mass.
 *
 * # Safety
 * `out` must be null or valid for a write of one pointer.
 */
enum GtnStatus gtn_scenario_from_mass(double alpha,
                                      double omega,
                                      double mass,
                                      struct GtnScenario **out);

/**
 * # Safety
 * `scenario` must be null or come from a scenario constructor, and is
 * invalid afterwards.
 */
void gtn_scenario_free(struct GtnScenario *scenario);

/**
 * Closed-form Svetlichny value of a three-qubit reduction.
 *
 * # Safety
 * `scenario` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_svetlichny(const struct GtnScenario *scenario,
                              enum GtnReducedState state,
                              double *out);

/**
 * Closed-form genuine tripartite entanglement concurrence.
 *
 * # Safety
 * `scenario` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_gte(const struct GtnScenario *scenario, enum GtnReducedState state, double *out);

/**
 * Maximal CHSH value of a two-qubit reduction.
 *
 * # Safety
 * `scenario` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_bell(const struct GtnScenario *scenario,
                        enum GtnReducedState state,
                        double *out);

/**
 * Concurrence of a two-qubit reduction.
 *
 * # Safety
 * `scenario` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_concurrence(const struct GtnScenario *scenario,
                               enum GtnReducedState state,
                               double *out);

/**
 * Critical temperature at which the accessible Svetlichny value reaches 4.
 *
 * `*exists` is set to 0 when no such temperature exists, in which case
 * `*out` is left untouched.
 *
 * # Safety
 * `out` and `exists` must be null or writable.
 */
enum GtnStatus gtn_critical_temperature(double alpha, double omega, double *out, int32_t *exists);

/**
 * Monogamy residuals at one scenario.
 *
 * # Safety
 * `scenario` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_monogamy(const struct GtnScenario *scenario, struct GtnMonogamy *out);

/**
 * Reduced density operator obtained by partial trace.
 *
 * # Safety
 * `scenario` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_reduced_state(const struct GtnScenario *scenario,
                                 enum GtnReducedState state,
                                 struct GtnDensity **out);

/**
 * # Safety
 * `density` must be null or come from [`gtn_reduced_state`], and is
 * invalid afterwards.
 */
void gtn_density_free(struct GtnDensity *density);

/**
 * Matrix dimension (2^qubits).
 *
 * # Safety
 * `density` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_density_dim(const struct GtnDensity *density, size_t *out);

/**
 * Copies the matrix in row-major order into `re` and `im`, each holding
 * at least `len` doubles; `len` must be at least dim².
 *
 * # Safety
 * `density` must be a live handle; `re` and `im` valid for `len` writes.
 */
enum GtnStatus gtn_density_matrix(const struct GtnDensity *density,
                                  double *re,
                                  double *im,
                                  size_t len);

/**
 * Numerically optimised Svetlichny value of a three-qubit density operator.
 *
 * # Safety
 * `density` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_density_svetlichny_bruteforce(const struct GtnDensity *density,
                                                 size_t restarts,
                                                 uint64_t seed,
                                                 double *out);

/**
 * Maximal CHSH value of a two-qubit density operator.
 *
 * # Safety
 * `density` must be a live handle; `out` null or writable.
 */
enum GtnStatus gtn_density_chsh_max(const struct GtnDensity *density, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GTN_H */
