/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef HECKEFORGE_H
#define HECKEFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HfStatus {
  HF_STATUS_OK = 0,
  HF_STATUS_NULL_POINTER = 1,
  HF_STATUS_INVALID_UTF8 = 2,
  HF_STATUS_SYNTAX = 3,
  HF_STATUS_NOT_PRIME = 4,
  // Input outside the domain of the operation.
  HF_STATUS_DOMAIN = 5,
  // A precision, Weyl group or enumeration cap was reached.
  HF_STATUS_CAP_EXCEEDED = 6,
  HF_STATUS_UNSUPPORTED = 7,
  // The output buffer is too small; the needed length was written.
  HF_STATUS_BUFFER_TOO_SMALL = 8,
  HF_STATUS_PANIC = 9,
} HfStatus;

// Factored element of `F_p(x, t)`.
typedef struct HfFactored HfFactored;

// Hecke algebra handle.
typedef struct HfHecke HfHecke;

// Root datum handle.
typedef struct HfRootDatum HfRootDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message, NUL-terminated, into `buf`.
// Returns the message length excluding the terminator; pass `cap = 0` to query it.
//
// # Safety
// `buf` must point to `cap` writable bytes when `cap > 0`.
size_t hf_last_error(char *buf, size_t cap);

// Library version as a static NUL-terminated string.
const char *hf_version(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void hf_string_free(char *s);

// Parses a group name such as `GL3`, `PGL2`, `B2` or `G2`.
//
// # Safety
// `name` is a NUL-terminated string; `out_handle` is writable.
enum HfStatus hf_root_datum_new(const char *name, struct HfRootDatum **out_handle);

// # Safety
// `h` comes from [`hf_root_datum_new`] and is not used afterwards. Null is ignored.
void hf_root_datum_free(struct HfRootDatum *h);

// Semisimple rank and coweight length.
//
// # Safety
// `h` is a live handle; the outputs are writable.
enum HfStatus hf_root_datum_rank(const struct HfRootDatum *h, size_t *rank, size_t *coweight_len);

// Point count of the orbit `Gr^lambda` as polynomial coefficients in `q`, lowest first.
//
// # Safety
// `lambda` holds `len` values; `coeffs` has room for `cap` values; `coeffs_len` is writable.
enum HfStatus hf_orbit_count(const struct HfRootDatum *h,
                             const int64_t *lambda,
                             size_t len,
                             int64_t *coeffs,
                             size_t cap,
                             size_t *coeffs_len);

// # Safety
// `d` is a live root datum handle; it is copied, so it may be freed afterwards.
enum HfStatus hf_hecke_new(const struct HfRootDatum *d, struct HfHecke **out_handle);

// # Safety
// `h` comes from [`hf_hecke_new`] and is not used afterwards. Null is ignored.
void hf_hecke_free(struct HfHecke *h);

// Product of two basis elements (`basis` is `'A'` or `'T'`) as a JSON string.
//
// # Safety
// `lambda` and `mu` hold `len` values each; `json` receives a string for [`hf_string_free`].
enum HfStatus hf_hecke_mul_json(const struct HfHecke *h,
                                char basis,
                                const int64_t *lambda,
                                const int64_t *mu,
                                size_t len,
                                char **json);

// Parses a factored element such as `x^2 * (x + t)^-1` over `F_p`.
//
// # Safety
// `expr` is a NUL-terminated string; `out_handle` is writable.
enum HfStatus hf_factored_parse(const char *expr, uint64_t p, struct HfFactored **out_handle);

// # Safety
// `h` comes from [`hf_factored_parse`] and is not used afterwards. Null is ignored.
void hf_factored_free(struct HfFactored *h);

// Sum of the flag boundary values of `(f, g)` over all flags through the origin.
//
// # Safety
// `f` and `g` are live handles; `total` is writable.
enum HfStatus hf_parshin_total(const struct HfFactored *f,
                               const struct HfFactored *g,
                               int64_t *total);

// Both sides of the two-flag identity for an axis-supported pair.
//
// # Safety
// `f` and `g` are live handles; the outputs are writable.
enum HfStatus hf_lemma_exten(const struct HfFactored *f,
                             const struct HfFactored *g,
                             int64_t *lhs,
                             int64_t *rhs,
                             bool *ok);

// Coefficients `s_0 .. s_{prec-1}` of the curve `x = s(t)` cut out by `poly`.
//
// # Safety
// `poly` is a NUL-terminated string; `coeffs` has room for `cap` values.
enum HfStatus hf_canonicalize(const char *poly,
                              uint64_t p,
                              size_t prec,
                              uint32_t *coeffs,
                              size_t cap,
                              size_t *coeffs_len);

// Cartan invariant of an `n x n` matrix of polynomials in `x`, given as a JSON
// array of rows of coefficient lists, e.g. `[[[0,1],[1]],[[0],[0,0,1]]]`.
//
// # Safety
// `matrix_json` is a NUL-terminated string; `cartan` has room for `cap` values.
enum HfStatus hf_smith(const char *matrix_json,
                       uint64_t p,
                       int64_t *cartan,
                       size_t cap,
                       size_t *cartan_len);

// Hall number `g^nu_{lambda mu}(q)` for `GL(n)`, by sublattice enumeration.
//
// # Safety
// `lambda`, `mu` and `nu` hold `n` values each; `count` is writable.
enum HfStatus hf_hall_number(const int64_t *lambda,
                             const int64_t *mu,
                             const int64_t *nu,
                             size_t n,
                             uint32_t q,
                             uint64_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HECKEFORGE_H */
