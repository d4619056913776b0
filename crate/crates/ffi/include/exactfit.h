#ifndef EXACTFIT_H
#define EXACTFIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define EXACTFIT_MODEL_POLY 0

#define EXACTFIT_MODEL_EXP 1

#define EXACTFIT_ARITH_EXACT 0

#define EXACTFIT_ARITH_F64 1

/**
 * Exact for polynomial fits, f64 for exponential fits.
 */
#define EXACTFIT_ARITH_DEFAULT 2

#define EXACTFIT_ORACLE_NEWTON 0

#define EXACTFIT_ORACLE_VANDERMONDE 1

#define EXACTFIT_ORACLE_BARYCENTRIC 2

#define EXACTFIT_ORACLE_ALL 3

/**
 * Status codes. Values 1-4 match the `exactfit` command-line exit codes.
 */
typedef enum ExactfitStatus {
  EXACTFIT_STATUS_OK = 0,
  /**
   * Invalid argument: unknown selector, bad length, or non-positive tolerance.
   */
  EXACTFIT_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed input, duplicate x, or an invalid model document.
   */
  EXACTFIT_STATUS_DATA_ERROR = 2,
  /**
   * Input outside the model's domain, e.g. a non-positive ordinate for `exp`.
   */
  EXACTFIT_STATUS_DOMAIN_ERROR = 3,
  /**
   * `exactfit_verify` found a disagreement with an oracle.
   */
  EXACTFIT_STATUS_VERIFICATION_MISMATCH = 4,
  EXACTFIT_STATUS_NULL_POINTER = 5,
  EXACTFIT_STATUS_INVALID_UTF8 = 6,
  EXACTFIT_STATUS_PANIC = 7,
} ExactfitStatus;

/**
 * Opaque fitted model.
 */
typedef struct ExactfitModel ExactfitModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Fits a model to CSV or JSON point text (format detected from the content).
 *
 * # Safety
 * `data` must be a NUL-terminated string and `out` a valid pointer to write to.
 */
enum ExactfitStatus exactfit_fit_text(const char *data,
                                      uint32_t kind,
                                      uint32_t arith_mode,
                                      struct ExactfitModel **out);

/**
 * Fits a model to `len` points given as parallel arrays. In exact mode each binary64
 * value is taken at its exact rational value.
 *
 * # Safety
 * `xs` and `ys` must point to `len` readable doubles; `out` must be writable.
 */
enum ExactfitStatus exactfit_fit_points(const double *xs,
                                        const double *ys,
                                        size_t len,
                                        uint32_t kind,
                                        uint32_t arith_mode,
                                        struct ExactfitModel **out);

/**
 * Reads a JSON model document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ExactfitStatus exactfit_model_from_json(const char *json, struct ExactfitModel **out);

/**
 * Writes the JSON model document to `*out`.
 *
 * # Safety
 * `model` must come from this library; `out` must be writable.
 */
enum ExactfitStatus exactfit_model_to_json(const struct ExactfitModel *model, char **out);

/**
 * Writes the human-readable formula to `*out`.
 *
 * # Safety
 * `model` must come from this library; `out` must be writable.
 */
enum ExactfitStatus exactfit_model_to_text(const struct ExactfitModel *model, char **out);

/**
 * Evaluates the model at `x` in binary64.
 *
 * # Safety
 * `model` must come from this library; `out` must be writable.
 */
enum ExactfitStatus exactfit_model_eval(const struct ExactfitModel *model, double x, double *out);

/**
 * Evaluates the model at a number given as text (`3`, `1/2`, `0.25`). Exact models
 * return an exact `p/q` string; other models return a binary64 decimal.
 *
 * # Safety
 * `model` must come from this library; `x` must be NUL-terminated; `out` writable.
 */
enum ExactfitStatus exactfit_model_eval_text(const struct ExactfitModel *model,
                                             const char *x,
                                             char **out);

/**
 * Model kind: `EXACTFIT_MODEL_POLY` or `EXACTFIT_MODEL_EXP`; `u32::MAX` for null.
 *
 * # Safety
 * `model` must be null or come from this library.
 */
uint32_t exactfit_model_kind(const struct ExactfitModel *model);

/**
 * Number of coefficients (degree + 1); 0 for null.
 *
 * # Safety
 * `model` must be null or come from this library.
 */
size_t exactfit_model_len(const struct ExactfitModel *model);

/**
 * Copies the monomial coefficients (polynomial) or log coefficients (exponential) into
 * `buf`, ascending by power, rounded to binary64. `len` must equal `exactfit_model_len`.
 *
 * # Safety
 * `model` must come from this library; `buf` must have room for `len` doubles.
 */
enum ExactfitStatus exactfit_model_coefficients(const struct ExactfitModel *model,
                                                double *buf,
                                                size_t len);

/**
 * Base value `p` of an exponential model.
 *
 * # Safety
 * `model` must come from this library; `out` must be writable.
 */
enum ExactfitStatus exactfit_model_base_value(const struct ExactfitModel *model, double *out);

/**
 * Checks the tableau fit of `data` against the selected oracles and writes one report
 * line per oracle to `*report`. Returns `VerificationMismatch` (with the report still
 * written) when any oracle disagrees.
 *
 * # Safety
 * `data` must be NUL-terminated and `report` writable.
 */
enum ExactfitStatus exactfit_verify(const char *data,
                                    uint32_t against,
                                    uint32_t arith_mode,
                                    double tolerance,
                                    char **report);

/**
 * Message for the last failed call on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *exactfit_last_error(void);

/**
 * # Safety
 * `model` must be null or a handle from this library that has not been freed.
 */
void exactfit_model_free(struct ExactfitModel *model);

/**
 * # Safety
 * `s` must be null or a string returned by this library that has not been freed.
 */
void exactfit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXACTFIT_H */
