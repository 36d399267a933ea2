#ifndef SYZ_MIRROR_H
#define SYZ_MIRROR_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SyzStatus {
  SYZ_STATUS_OK = 0,
  SYZ_STATUS_NULL_POINTER = 1,
  SYZ_STATUS_INVALID_UTF8 = 2,
  SYZ_STATUS_PARSE = 3,
  SYZ_STATUS_INVALID_INPUT = 4,
  /**
   * A mathematical precondition failed (equal root moduli, singular fiber, ...).
   */
  SYZ_STATUS_MATH = 5,
  /**
   * A section or gluing failed validation.
   */
  SYZ_STATUS_VALIDATION = 6,
  SYZ_STATUS_NOT_AVAILABLE = 7,
  SYZ_STATUS_PANIC = 8,
} SyzStatus;

typedef struct SyzBase2D SyzBase2D;

typedef struct SyzBundle SyzBundle;

typedef struct SyzCurve SyzCurve;

typedef struct SyzPolynomial SyzPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next failure.
 */
const char *syz_last_error(void);

/**
 * Library version as a static string.
 */
const char *syz_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void syz_string_free(char *s);

/**
 * Parses a Laurent polynomial in `z1..z{dim}` (`z` when `dim = 1`).
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out` must be writable.
 */
enum SyzStatus syz_polynomial_parse(const char *expr, size_t dim, struct SyzPolynomial **out);

/**
 * # Safety
 * `p` must come from [`syz_polynomial_parse`] and not have been freed.
 */
void syz_polynomial_free(struct SyzPolynomial *p);

/**
 * # Safety
 * `p` must be a live handle.
 */
size_t syz_polynomial_dim(const struct SyzPolynomial *p);

/**
 * Evaluates at `(re[i] + i·im[i])`, `n = dim` coordinates.
 *
 * # Safety
 * `re`, `im` must hold `n` doubles; the outputs must be writable.
 */
enum SyzStatus syz_polynomial_eval(const struct SyzPolynomial *p,
                                   const double *re,
                                   const double *im,
                                   size_t n,
                                   double *out_re,
                                   double *out_im);

/**
 * Whether `(x, y)` lies in the amoeba of a two-variable polynomial.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SyzStatus syz_amoeba_membership(const struct SyzPolynomial *p,
                                     double x,
                                     double y,
                                     double tol,
                                     bool *out);

/**
 * Fan report JSON for the subdivision induced by `lifting_json` (NULL: flat lifting).
 *
 * # Safety
 * `p` must be a live handle, `lifting_json` NULL or a NUL-terminated string, `out` writable.
 */
enum SyzStatus syz_mirror_report(const struct SyzPolynomial *p,
                                 const char *lifting_json,
                                 char **out);

/**
 * 2d base of `xy = f(z)`; `moduli` may be NULL to compute root moduli numerically.
 *
 * # Safety
 * `p` must be a live one-variable handle; `moduli` NULL or `n` doubles; `out` writable.
 */
enum SyzStatus syz_base2d_new(const struct SyzPolynomial *p,
                              const double *moduli,
                              size_t n,
                              struct SyzBase2D **out);

/**
 * # Safety
 * `b` must come from [`syz_base2d_new`] and not have been freed.
 */
void syz_base2d_free(struct SyzBase2D *b);

/**
 * # Safety
 * `b` must be a live handle.
 */
size_t syz_base2d_wall_count(const struct SyzBase2D *b);

/**
 * Copies up to `cap` wall positions into `out`.
 *
 * # Safety
 * `b` must be a live handle and `out` must hold `cap` doubles.
 */
enum SyzStatus syz_base2d_walls(const struct SyzBase2D *b, double *out, size_t cap);

/**
 * Dual tropical curve of a two-variable polynomial (`lifting_json` NULL: flat).
 *
 * # Safety
 * `p` must be a live handle, `lifting_json` NULL or a NUL-terminated string, `out` writable.
 */
enum SyzStatus syz_curve_new(const struct SyzPolynomial *p,
                             const char *lifting_json,
                             struct SyzCurve **out);

/**
 * # Safety
 * `c` must come from [`syz_curve_new`] and not have been freed.
 */
void syz_curve_free(struct SyzCurve *c);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum SyzStatus syz_curve_json(const struct SyzCurve *c, char **out);

/**
 * Transform of a 2d section given by one integer per wall.
 *
 * # Safety
 * `b` must be a live handle, `values` must hold `n` integers, `out` writable.
 */
enum SyzStatus syz_transform2d(const struct SyzBase2D *b,
                               const int64_t *values,
                               size_t n,
                               struct SyzBundle **out);

/**
 * Transform of a 3d tropical section `{"legs": [{"alpha", "beta", "n"}]}`.
 *
 * # Safety
 * `c` must be a live handle, `section_json` a NUL-terminated string, `out` writable.
 */
enum SyzStatus syz_transform3d(const struct SyzCurve *c,
                               const char *section_json,
                               struct SyzBundle **out);

/**
 * # Safety
 * `b` must come from a transform call and not have been freed.
 */
void syz_bundle_free(struct SyzBundle *b);

/**
 * Degree on the exceptional curve; `SYZ_STATUS_NOT_AVAILABLE` unless the base has two walls.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum SyzStatus syz_bundle_degree(const struct SyzBundle *b, int64_t *out);

/**
 * # Safety
 * `b` must be a live handle.
 */
bool syz_bundle_is_structure_sheaf(const struct SyzBundle *b);

/**
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum SyzStatus syz_bundle_json(const struct SyzBundle *b, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYZ_MIRROR_H */
