#ifndef POLYIRR_H
#define POLYIRR_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PolyirrStatus {
  POLYIRR_STATUS_OK = 0,
  POLYIRR_STATUS_NULL_POINTER = 1,
  POLYIRR_STATUS_INVALID_UTF8 = 2,
  POLYIRR_STATUS_PARSE_ERROR = 3,
  POLYIRR_STATUS_INVALID_INPUT = 4,
  POLYIRR_STATUS_BUDGET_EXCEEDED = 5,
  POLYIRR_STATUS_VERIFICATION_FAILED = 6,
  POLYIRR_STATUS_INTERNAL = 7,
} PolyirrStatus;

typedef enum PolyirrVerdict {
  POLYIRR_VERDICT_IRREDUCIBLE = 0,
  POLYIRR_VERDICT_INCONCLUSIVE = 1,
} PolyirrVerdict;

typedef enum PolyirrCriterion {
  POLYIRR_CRITERION_NONE = 0,
  POLYIRR_CRITERION_DEGREE_GCD = 1,
  POLYIRR_CRITERION_FACE_INDECOMPOSABLE = 2,
  POLYIRR_CRITERION_GAO_DIRECT = 3,
} PolyirrCriterion;

/**
 * Opaque certificate handle.
 */
typedef struct PolyirrCertificate PolyirrCertificate;

/**
 * Opaque polynomial handle.
 */
typedef struct PolyirrPolynomial PolyirrPolynomial;

/**
 * Oracle limits. A `time_budget_ms` of 0 means no time limit.
 */
typedef struct PolyirrBudget {
  size_t max_dim;
  size_t max_points;
  uint64_t max_nodes;
  uint64_t time_budget_ms;
} PolyirrBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The default oracle limits.
 */
struct PolyirrBudget polyirr_budget_default(void);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *polyirr_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string obtained from this library and not yet freed.
 */
void polyirr_string_free(char *s);

/**
 * Parses a polynomial. `vars` is null for first-appearance order, or a
 * comma-separated variable list fixing the order and the ambient variables.
 *
 * # Safety
 * `text` and `vars` must be null or NUL-terminated strings; `out` must be
 * null or writable.
 */
enum PolyirrStatus polyirr_polynomial_parse(const char *text,
                                            const char *vars,
                                            struct PolyirrPolynomial **out);

/**
 * Releases a polynomial. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle from this library not yet freed.
 */
void polyirr_polynomial_free(struct PolyirrPolynomial *p);

/**
 * Number of variables of `p`.
 *
 * # Safety
 * `p` must be null or a live handle; `out` must be null or writable.
 */
enum PolyirrStatus polyirr_polynomial_num_vars(const struct PolyirrPolynomial *p, size_t *out);

/**
 * Canonical text form of `p`; free with [`polyirr_string_free`].
 *
 * # Safety
 * `p` must be null or a live handle; `out` must be null or writable.
 */
enum PolyirrStatus polyirr_polynomial_to_string(const struct PolyirrPolynomial *p, char **out);

/**
 * Newton polytope of `p` as `{"dim":..,"vertices":[..]}`.
 *
 * # Safety
 * `p` must be null or a live handle; `out` must be null or writable.
 */
enum PolyirrStatus polyirr_newton_polytope_json(const struct PolyirrPolynomial *p, char **out);

/**
 * Runs the criteria in order and returns the resulting certificate. An
 * inconclusive outcome is still `POLYIRR_STATUS_OK`; read the verdict.
 *
 * # Safety
 * `p` must be null or a live handle; `budget` may be null for the defaults;
 * `out` must be null or writable.
 */
enum PolyirrStatus polyirr_decide(const struct PolyirrPolynomial *p,
                                  const struct PolyirrBudget *budget,
                                  struct PolyirrCertificate **out);

/**
 * Releases a certificate. Null is ignored.
 *
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void polyirr_certificate_free(struct PolyirrCertificate *c);

/**
 * # Safety
 * `c` must be null or a live handle; `out` must be null or writable.
 */
enum PolyirrStatus polyirr_certificate_verdict(const struct PolyirrCertificate *c,
                                               enum PolyirrVerdict *out);

/**
 * # Safety
 * `c` must be null or a live handle; `out` must be null or writable.
 */
enum PolyirrStatus polyirr_certificate_criterion(const struct PolyirrCertificate *c,
                                                 enum PolyirrCriterion *out);

/**
 * Certificate as JSON; free with [`polyirr_string_free`].
 *
 * # Safety
 * `c` must be null or a live handle; `out` must be null or writable.
 */
enum PolyirrStatus polyirr_certificate_to_json(const struct PolyirrCertificate *c, char **out);

/**
 * Reads a certificate from JSON.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out` must be null or
 * writable.
 */
enum PolyirrStatus polyirr_certificate_from_json(const char *text, struct PolyirrCertificate **out);

/**
 * Checks that `c` is a valid certificate for `p`. Returns
 * `POLYIRR_STATUS_VERIFICATION_FAILED` if it is not.
 *
 * # Safety
 * `c` and `p` must be null or live handles; `budget` may be null for the
 * defaults.
 */
enum PolyirrStatus polyirr_certificate_verify(const struct PolyirrCertificate *c,
                                              const struct PolyirrPolynomial *p,
                                              const struct PolyirrBudget *budget);

/**
 * Searches for a Minkowski decomposition of the polytope given as
 * `{"dim":..,"vertices":[..]}`. The result is
 * `{"decomposable":bool,"summands":[A,B]|null}`.
 *
 * # Safety
 * `polytope_json` must be null or a NUL-terminated string; `budget` may be
 * null for the defaults; `out` must be null or writable.
 */
enum PolyirrStatus polyirr_oracle_json(const char *polytope_json,
                                       const struct PolyirrBudget *budget,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYIRR_H */
