#ifndef JOHNSONLAB_H
#define JOHNSONLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum JlStatus {
  JL_STATUS_OK = 0,
  JL_STATUS_NULL_POINTER = 1,
  JL_STATUS_INVALID_UTF8 = 2,
  JL_STATUS_PARSE = 3,
  JL_STATUS_INVALID_ARGUMENT = 4,
  JL_STATUS_MODEL_MISMATCH = 5,
  JL_STATUS_UNSUPPORTED = 6,
  JL_STATUS_OVERFLOW = 7,
  JL_STATUS_INTERNAL = 8,
  JL_STATUS_PANIC = 9,
} JlStatus;

/**
 * Opaque cyclic polynomial.
 */
typedef struct JlCyclicPoly JlCyclicPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a cyclic polynomial from JSON.
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` a valid pointer.
 */
enum JlStatus jl_cyclic_from_json(const char *json, struct JlCyclicPoly **out);

/**
 * Canonical JSON text of a cyclic polynomial; free with `jl_string_free`.
 *
 * # Safety
 * `poly` must come from this library and `out` must be a valid pointer.
 */
enum JlStatus jl_cyclic_to_json(const struct JlCyclicPoly *poly, char **out);

/**
 * # Safety
 * `poly` must come from this library or be null; it must not be used afterwards.
 */
void jl_cyclic_free(struct JlCyclicPoly *poly);

/**
 * Goldman bracket `{x, y}` as a new handle.
 *
 * # Safety
 * `x` and `y` must come from this library and `out` must be a valid pointer.
 */
enum JlStatus jl_goldman_bracket(const struct JlCyclicPoly *x,
                                 const struct JlCyclicPoly *y,
                                 struct JlCyclicPoly **out);

/**
 * Turaev cobracket as JSON text; free with `jl_string_free`.
 *
 * # Safety
 * `x` must come from this library and `out` must be a valid pointer.
 */
enum JlStatus jl_turaev_cobracket(const struct JlCyclicPoly *x, char **out);

/**
 * Evaluates Pollack relation 1 or 2; `*holds` is set to 1 if it vanishes.
 *
 * # Safety
 * `holds` must be a valid pointer.
 */
enum JlStatus jl_pollack_check(uint8_t which, uint8_t *holds);

/**
 * Dimension of the irreducible `Sp(2g)`-module with highest weight `parts[0..len]`.
 *
 * # Safety
 * `parts` must point to `len` integers (or be null with `len == 0`); `out` must be valid.
 */
enum JlStatus jl_irr_dimension(const uint32_t *parts, size_t len, size_t genus, uint64_t *out);

/**
 * Arf invariant of a framing given by `rot(a_j)`, `rot(b_j)` for `j < genus`.
 *
 * # Safety
 * `rot_a` and `rot_b` must point to `genus` integers; `out` must be valid.
 */
enum JlStatus jl_framing_arf(const int64_t *rot_a,
                             const int64_t *rot_b,
                             size_t genus,
                             uint8_t *out);

/**
 * Message of the last failure on this thread; empty after a success. The
 * pointer stays valid until the next library call on this thread.
 */
const char *jl_last_error_message(void);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void jl_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *jl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JOHNSONLAB_H */
