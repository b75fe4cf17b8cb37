#ifndef IWASAWA_H
#define IWASAWA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IwStatus {
  IW_STATUS_OK = 0,
  IW_STATUS_NULL_POINTER = 1,
  IW_STATUS_INVALID_UTF8 = 2,
  IW_STATUS_INVALID_ARGUMENT = 3,
  IW_STATUS_NOT_ODD_PRIME = 4,
  IW_STATUS_PRECISION_OVERFLOW = 5,
  IW_STATUS_NOT_IN_MAXIMAL_IDEAL = 6,
  IW_STATUS_UNCERTIFIED_INPUT = 7,
  IW_STATUS_UNCERTIFIED = 8,
  IW_STATUS_UNSTABLE = 9,
  IW_STATUS_INSUFFICIENT_DATA = 10,
  IW_STATUS_NO_FIT = 11,
  IW_STATUS_INVALID_RECORD = 12,
  IW_STATUS_OUT_OF_RANGE = 13,
  IW_STATUS_FAILED = 14,
  IW_STATUS_PANIC = 15,
} IwStatus;

/**
 * Branch of the `dim I_alpha` case analysis; `None` when `mu/lambda` could
 * not be certified.
 */
typedef enum IwBranch {
  IW_BRANCH_NONE = 0,
  IW_BRANCH_MU_POSITIVE = 1,
  IW_BRANCH_UNIT_F = 2,
  IW_BRANCH_U_GE1 = 3,
  IW_BRANCH_LAMBDA_GT1 = 4,
  IW_BRANCH_LAMBDA_EQ1_GENERIC = 5,
  IW_BRANCH_LAMBDA_EQ1_RESIDUAL = 6,
} IwBranch;

/**
 * Opaque truncated power series.
 */
typedef struct IwSeries IwSeries;

/**
 * Opaque Weierstrass factorisation `p^mu g U`.
 */
typedef struct IwWeierstrass IwWeierstrass;

/**
 * `mu_infinite` is set when every stored coefficient vanishes; `lambda` is
 * meaningful only when `has_lambda`.
 */
typedef struct IwMuLambda {
  uint32_t mu;
  bool mu_infinite;
  size_t lambda;
  bool has_lambda;
  bool certified;
} IwMuLambda;

/**
 * A quotient dimension. With `lower_bound` set, `value` is only a lower bound.
 */
typedef struct IwDim {
  size_t value;
  bool lower_bound;
  bool certified;
  enum IwBranch branch;
} IwDim;

typedef struct IwFit {
  uint64_t lambda;
  uint64_t mu;
  int64_t nu;
  uint32_t n0;
} IwFit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *iw_last_error(void);

/**
 * Parse `coeff*T^k` terms into an exact series at precision `p^precision`
 * with `window` stored coefficients.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IwStatus iw_series_parse(uint64_t p,
                              uint32_t precision,
                              size_t window,
                              const char *text,
                              struct IwSeries **out);

/**
 * Series from `len` signed coefficients, lowest degree first. With `exact`
 * unset the coefficients are a truncation of an unknown series.
 *
 * # Safety
 * `coeffs` must point to `len` readable values and `out` be valid.
 */
enum IwStatus iw_series_from_coeffs(uint64_t p,
                                    uint32_t precision,
                                    size_t window,
                                    const int64_t *coeffs,
                                    size_t len,
                                    bool exact,
                                    struct IwSeries **out);

/**
 * # Safety
 * `s` must be NULL or a handle from this library that has not been freed.
 */
void iw_series_free(struct IwSeries *s);

/**
 * Number of stored coefficients, or 0 for NULL.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
size_t iw_series_window(const struct IwSeries *s);

/**
 * Coefficient `i` as a residue in `[0, p^precision)`.
 *
 * # Safety
 * `s` must be a live handle and `out` valid.
 */
enum IwStatus iw_series_coeff(const struct IwSeries *s, size_t i, uint64_t *out);

/**
 * # Safety
 * `s` must be a live handle and `out` valid.
 */
enum IwStatus iw_mu_lambda(const struct IwSeries *s, struct IwMuLambda *out);

/**
 * Weierstrass preparation. Fails with `UncertifiedInput` when `mu/lambda`
 * cannot be certified.
 *
 * # Safety
 * `s` must be a live handle and `out` valid.
 */
enum IwStatus iw_weierstrass_prep(const struct IwSeries *s, struct IwWeierstrass **out);

/**
 * # Safety
 * `w` must be NULL or a handle from this library that has not been freed.
 */
void iw_weierstrass_free(struct IwWeierstrass *w);

/**
 * # Safety
 * `w` must be a live handle; the out-pointers may be NULL.
 */
enum IwStatus iw_weierstrass_invariants(const struct IwWeierstrass *w,
                                        uint32_t *mu,
                                        size_t *lambda,
                                        bool *certified);

/**
 * Coefficient `i <= lambda` of the distinguished polynomial, modulo
 * `p^(precision - mu)`.
 *
 * # Safety
 * `w` must be a live handle and `out` valid.
 */
enum IwStatus iw_weierstrass_distinguished_coeff(const struct IwWeierstrass *w,
                                                 size_t i,
                                                 uint64_t *out);

/**
 * A copy of the unit factor `U` as a new series handle.
 *
 * # Safety
 * `w` must be a live handle and `out` valid.
 */
enum IwStatus iw_weierstrass_unit(const struct IwWeierstrass *w, struct IwSeries **out);

/**
 * `dim Z_p[[S,T]]/I_alpha` for `alpha = num/den`, `p` not dividing `den`.
 *
 * # Safety
 * `s` must be a live handle and `out` valid.
 */
enum IwStatus iw_dim_ialpha(const struct IwSeries *s, int64_t num, int64_t den, struct IwDim *out);

/**
 * Dimensions for `alpha` and `-alpha`, and whether one is at most 1.
 *
 * # Safety
 * `s` must be a live handle and the out-pointers valid.
 */
enum IwStatus iw_lemma31_min(const struct IwSeries *s,
                             int64_t num,
                             int64_t den,
                             struct IwDim *plus,
                             struct IwDim *minus,
                             bool *min_le_1);

/**
 * Fit `e_n = lambda n + mu p^n + nu` to `len` observations `(layers[i],
 * exponents[i])`. Returns `NoFit` when no suffix admits integer invariants.
 *
 * # Safety
 * `layers` and `exponents` must point to `len` readable values and `out` be
 * valid.
 */
enum IwStatus iw_fit(uint64_t p,
                     const uint32_t *layers,
                     const uint64_t *exponents,
                     size_t len,
                     struct IwFit *out);

/**
 * Evaluate the criterion on a JSON array (or sequence) of schema-1 field
 * records. `out` receives a JSON array of reports, to be released with
 * [`iw_string_free`].
 *
 * # Safety
 * `records_json` must be a NUL-terminated string and `out` valid.
 */
enum IwStatus iw_check_records_json(const char *records_json, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void iw_string_free(char *s);

/**
 * Static name of a status code.
 */
const char *iw_status_name(enum IwStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IWASAWA_H */
