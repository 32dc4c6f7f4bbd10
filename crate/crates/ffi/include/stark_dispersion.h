#ifndef STARK_DISPERSION_H
#define STARK_DISPERSION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SdStatus {
  SdStatus_Ok = 0,
  SdStatus_NullPointer = 1,
  SdStatus_Domain = 2,
  SdStatus_Validity = 3,
  SdStatus_NoRoot = 4,
  SdStatus_NoCrossover = 5,
  SdStatus_OracleFailure = 6,
  SdStatus_Other = 7,
  SdStatus_Panic = 8,
} SdStatus;

typedef enum SdStability {
  SdStability_Stable = 0,
  SdStability_Unstable = 1,
  SdStability_NotApplicable = 2,
} SdStability;

/**
 * Opaque calculator handle.
 */
typedef struct SdCalculator SdCalculator;

typedef struct SdEnergy {
  /**
   * Field-assisted component (J).
   */
  double field_component;
  /**
   * Van der Waals baseline (J).
   */
  double vdw;
  /**
   * Sum of the two (J).
   */
  double total;
} SdEnergy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * New calculator with CODATA 2018 constants. Free with [`sd_calculator_free`].
 */
struct SdCalculator *sd_calculator_new(void);

/**
 * # Safety
 * `calc` must be null or a pointer returned by [`sd_calculator_new`] that
 * has not been freed.
 */
void sd_calculator_free(struct SdCalculator *calc);

/**
 * Interaction energy at separation `r` (m), angle `theta` (rad) and fields
 * `field`, `field_prime` (V/m).
 *
 * # Safety
 * `calc` must be a live handle and `out` a valid pointer.
 */
enum SdStatus sd_total_energy(const struct SdCalculator *calc,
                              double r,
                              double theta,
                              double field,
                              double field_prime,
                              struct SdEnergy *out);

/**
 * Radial force (N); positive is repulsive.
 *
 * # Safety
 * `calc` must be a live handle and `out` a valid pointer.
 */
enum SdStatus sd_radial_force(const struct SdCalculator *calc,
                              double r,
                              double theta,
                              double field,
                              double field_prime,
                              double *out);

/**
 * Field ℰ = ℰ′ (V/m) at which the field term equals the baseline in size.
 *
 * # Safety
 * `calc` must be a live handle and `out` a valid pointer.
 */
enum SdStatus sd_crossover_field(const struct SdCalculator *calc,
                                 double r,
                                 double theta,
                                 double *out);

/**
 * Smallest separation in `[r_lo, r_hi]` (m) where the radial force vanishes.
 * `out_stability` may be null.
 *
 * # Safety
 * `calc` must be a live handle, `out_r` a valid pointer, `out_stability`
 * null or valid.
 */
enum SdStatus sd_equilibrium_distance(const struct SdCalculator *calc,
                                      double theta,
                                      double field,
                                      double field_prime,
                                      double r_lo,
                                      double r_hi,
                                      double *out_r,
                                      enum SdStability *out_stability);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *sd_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STARK_DISPERSION_H */
