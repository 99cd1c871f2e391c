#ifndef LEAFSTAB_H
#define LEAFSTAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum LeafstabStatus {
  LEAFSTAB_STATUS_OK = 0,
  LEAFSTAB_STATUS_NULL_POINTER = 1,
  // Malformed configuration text.
  LEAFSTAB_STATUS_CONFIG = 2,
  // Parameters outside the model's domain (admissibility, chart, blow-up).
  LEAFSTAB_STATUS_DOMAIN = 3,
  // Internal inconsistency or a numerical routine that did not converge.
  LEAFSTAB_STATUS_INTERNAL = 4,
  // The call does not apply to this report.
  LEAFSTAB_STATUS_INVALID_ARGUMENT = 5,
  LEAFSTAB_STATUS_BUFFER_TOO_SMALL = 6,
  LEAFSTAB_STATUS_PANIC = 7,
} LeafstabStatus;

typedef enum LeafstabSystem {
  LEAFSTAB_SYSTEM_SPACECRAFT = 0,
  LEAFSTAB_SYSTEM_UNDERWATER = 1,
} LeafstabSystem;

typedef enum LeafstabVerdict {
  LEAFSTAB_VERDICT_STABLE_SUFFICIENT = 0,
  LEAFSTAB_VERDICT_INCONCLUSIVE = 1,
} LeafstabVerdict;

typedef enum LeafstabDefiniteness {
  LEAFSTAB_DEFINITENESS_POSITIVE_DEFINITE = 0,
  LEAFSTAB_DEFINITENESS_NEGATIVE_DEFINITE = 1,
  LEAFSTAB_DEFINITENESS_INDEFINITE = 2,
  LEAFSTAB_DEFINITENESS_MARGINAL = 3,
} LeafstabDefiniteness;

// Opaque stability report.
typedef struct LeafstabReport LeafstabReport;

// Spacecraft on a stationary orbit. Units: kg m^2, rad/s, 1/s^2.
typedef struct LeafstabSpacecraftParams {
  double inertia[3];
  double omega_t;
  double k[3];
} LeafstabSpacecraftParams;

// Underwater vehicle. Masses include added mass, inertias added inertia.
typedef struct LeafstabVehicleParams {
  double m;
  double g;
  double l;
  double m1;
  double m2;
  double m3;
  double i11;
  double i12;
  double i22;
  double i3;
} LeafstabVehicleParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *leafstab_version(void);

// Copies the calling thread's last error message into `buf` (truncated,
// always NUL-terminated when `len > 0`) and returns the buffer size the
// full message needs, including the terminator. Returns 0 when there is
// no message.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t leafstab_last_error_message(char *buf, size_t len);

// Stability analysis of a spacecraft's relative equilibrium.
//
// # Safety
// `params` must point to a valid struct and `out` must be valid for a
// pointer write. On success `*out` owns a report.
enum LeafstabStatus leafstab_spacecraft_analyze(const struct LeafstabSpacecraftParams *params,
                                                struct LeafstabReport **out);

// Stability analysis of an underwater vehicle translating with impulse
// `q2e` along its second axis.
//
// # Safety
// As [`leafstab_spacecraft_analyze`].
enum LeafstabStatus leafstab_underwater_analyze(const struct LeafstabVehicleParams *params,
                                                double q2e,
                                                struct LeafstabReport **out);

// Stability analysis of a JSON run configuration (the format the
// command-line tool reads).
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` as above.
enum LeafstabStatus leafstab_analyze_config_json(const char *json, struct LeafstabReport **out);

// # Safety
// `report` must be null or a handle from this library not yet freed.
void leafstab_report_free(struct LeafstabReport *report);

// # Safety
// `report` must be a live handle and `out` valid for a write.
enum LeafstabStatus leafstab_report_system(const struct LeafstabReport *report,
                                           enum LeafstabSystem *out);

// # Safety
// `report` must be a live handle and `out` valid for a write.
enum LeafstabStatus leafstab_report_verdict(const struct LeafstabReport *report,
                                            enum LeafstabVerdict *out);

// # Safety
// `report` must be a live handle and `out` valid for a write.
enum LeafstabStatus leafstab_report_definiteness(const struct LeafstabReport *report,
                                                 enum LeafstabDefiniteness *out);

// Writes the 6x6 reduced Hessian in row-major order into `out`, which
// must hold at least 36 doubles.
//
// # Safety
// `report` must be a live handle and `out` must point to `len` doubles.
enum LeafstabStatus leafstab_report_hessian(const struct LeafstabReport *report,
                                            double *out,
                                            size_t len);

// Writes the six Hessian eigenvalues in ascending order.
//
// # Safety
// `report` must be a live handle and `out` must point to `len` doubles.
enum LeafstabStatus leafstab_report_eigenvalues(const struct LeafstabReport *report,
                                                double *out,
                                                size_t len);

// Largest finite-difference gradient component at the equilibrium.
//
// # Safety
// `report` must be a live handle and `out` valid for a write.
enum LeafstabStatus leafstab_report_critical_residual(const struct LeafstabReport *report,
                                                      double *out);

// Stability conditions as a bit mask (bit `i` set when condition `i`
// holds) and their number: three for a spacecraft, four for a vehicle
// (`Q2 != 0`, `l > 0`, restoring margin, `m2 > m1`).
//
// # Safety
// `report` must be a live handle; `mask` and `count` valid for writes.
enum LeafstabStatus leafstab_report_conditions(const struct LeafstabReport *report,
                                               uint32_t *mask,
                                               size_t *count);

// Closed-form Hessian determinant; vehicle reports only.
//
// # Safety
// `report` must be a live handle and `out` valid for a write.
enum LeafstabStatus leafstab_report_determinant(const struct LeafstabReport *report, double *out);

// Serialises the report as JSON into a new string owned by the caller
// and released with [`leafstab_string_free`].
//
// # Safety
// `report` must be a live handle and `out` valid for a pointer write.
enum LeafstabStatus leafstab_report_to_json(const struct LeafstabReport *report, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void leafstab_string_free(char *s);

// Stationary-orbit radii of the built-in 4769 Castalia model (m, ascending)
// and their feasibility. `*count` receives the number of radii even when
// `capacity` is too small.
//
// # Safety
// `radii` and `feasible` must point to `capacity` elements; `count` valid
// for a write.
enum LeafstabStatus leafstab_castalia_radii(double *radii,
                                            bool *feasible,
                                            size_t capacity,
                                            size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEAFSTAB_H */
