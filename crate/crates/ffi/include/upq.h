#ifndef UPQ_H
#define UPQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Parse, validation and guard match the CLI exit codes.
 */
typedef enum UpqStatus {
  UPQ_STATUS_OK = 0,
  UPQ_STATUS_PARSE = 2,
  UPQ_STATUS_VALIDATION = 3,
  UPQ_STATUS_GUARD = 4,
  UPQ_STATUS_NULL_POINTER = 5,
  UPQ_STATUS_INVALID_UTF8 = 6,
  UPQ_STATUS_PANIC = 7,
} UpqStatus;

typedef enum UpqVerdict {
  UPQ_VERDICT_NO_OBSTRUCTION_FOUND = 0,
  UPQ_VERDICT_NON_UNITARY_BY_FPP = 1,
  UPQ_VERDICT_NON_UNITARY_BY_SRV_HULL = 2,
  UPQ_VERDICT_NON_UNITARY_BY_FUNDAMENTAL_GAP = 3,
  UPQ_VERDICT_INDUCED_IN_GOOD_RANGE = 4,
} UpqVerdict;

/**
 * Opaque screening report.
 */
typedef struct UpqReport UpqReport;

/**
 * Opaque θ-stable datum.
 */
typedef struct UpqThetaDatum UpqThetaDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *upq_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *upq_version(void);

/**
 * Parses a θ-stable datum from JSON (`{"p","q","blocks","nu"}`).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum UpqStatus upq_theta_datum_from_json(const char *json, struct UpqThetaDatum **out);

/**
 * Builds the datum of the K-type `mu` (`"a,b|c,d"`). `nu_json` is a JSON list
 * of ν lists, one per block with `min(r,s) > 0`, or null for ν = 0.
 *
 * # Safety
 * `mu` and a non-null `nu_json` must be nul-terminated strings; `out` must be writable.
 */
enum UpqStatus upq_theta_datum_from_mu(uintptr_t p,
                                       uintptr_t q,
                                       const char *mu,
                                       const char *nu_json,
                                       struct UpqThetaDatum **out);

/**
 * # Safety
 * `td` must come from this library; `out` must be writable.
 */
enum UpqStatus upq_theta_datum_to_json(const struct UpqThetaDatum *td, char **out);

/**
 * # Safety
 * `td` must come from this library and not be used afterwards. Null is ignored.
 */
void upq_theta_datum_free(struct UpqThetaDatum *td);

/**
 * Runs every screening test on `td`.
 *
 * # Safety
 * `td` must come from this library; `out` must be writable.
 */
enum UpqStatus upq_screen(const struct UpqThetaDatum *td, struct UpqReport **out);

/**
 * # Safety
 * `report` must come from this library; `out` must be writable.
 */
enum UpqStatus upq_report_verdict(const struct UpqReport *report, enum UpqVerdict *out);

/**
 * Number of certificate K-type lists in the report.
 *
 * # Safety
 * `report` must come from this library; `out` must be writable.
 */
enum UpqStatus upq_report_certificate_count(const struct UpqReport *report, uintptr_t *out);

/**
 * The report as the JSON the CLI prints.
 *
 * # Safety
 * `report` must come from this library; `out` must be writable.
 */
enum UpqStatus upq_report_to_json(const struct UpqReport *report, char **out);

/**
 * # Safety
 * `report` must come from this library and not be used afterwards. Null is ignored.
 */
void upq_report_free(struct UpqReport *report);

/**
 * # Safety
 * `s` must be a string returned by this library. Null is ignored.
 */
void upq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UPQ_H */
