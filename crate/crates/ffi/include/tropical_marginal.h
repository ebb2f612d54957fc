#ifndef TROPICAL_MARGINAL_H
#define TROPICAL_MARGINAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Party selector for transcript keys.
 */
typedef enum TmRole {
  TM_ROLE_ALICE = 0,
  TM_ROLE_BOB = 1,
} TmRole;

/**
 * Semiring selector.
 */
typedef enum TmSemiring {
  TM_SEMIRING_MIN_PLUS = 0,
  TM_SEMIRING_MAX_PLUS = 1,
} TmSemiring;

/**
 * Result of a call.
 */
typedef enum TmStatus {
  TM_STATUS_OK = 0,
  TM_STATUS_NULL_POINTER = 1,
  TM_STATUS_INVALID_ARGUMENT = 2,
  TM_STATUS_PARSE = 3,
  TM_STATUS_NOT_MARGINAL = 4,
  TM_STATUS_SAMPLER_EXHAUSTED = 5,
  TM_STATUS_NO_DECOMPOSITION = 6,
  TM_STATUS_PROTOCOL = 7,
  TM_STATUS_NOT_INTEGER = 8,
  TM_STATUS_PANIC = 9,
} TmStatus;

/**
 * Opaque square matrix over a tropical semiring.
 */
typedef struct TmMatrix TmMatrix;

/**
 * Opaque record of one protocol run.
 */
typedef struct TmTranscript TmTranscript;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *tm_last_error(void);

/**
 * Library version as a static string.
 */
const char *tm_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void tm_string_free(char *s);

/**
 * Builds a `dim × dim` matrix from row-major integer entries.
 *
 * # Safety
 * `entries` must point to `dim * dim` values and `out` must be writable.
 */
enum TmStatus tm_matrix_new(enum TmSemiring semiring,
                            size_t dim,
                            const int64_t *entries,
                            struct TmMatrix **out_matrix);

/**
 * Parses a matrix document such as `{"semiring":"min-plus","rows":[[0]]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum TmStatus tm_matrix_from_json(const char *json, struct TmMatrix **out_matrix);

/**
 * The matrix as a JSON document; free with [`tm_string_free`]. Null on a
 * null handle.
 *
 * # Safety
 * `m` must be a live handle or null.
 */
char *tm_matrix_to_json(const struct TmMatrix *m);

/**
 * Dimension of `m`, or 0 for a null handle.
 *
 * # Safety
 * `m` must be a live handle or null.
 */
size_t tm_matrix_dim(const struct TmMatrix *m);

/**
 * Entry `(i, j)` (0-based) as an integer. Fails with `NOT_INTEGER` for
 * infinite or fractional entries.
 *
 * # Safety
 * `m` must be a live handle and `value` writable.
 */
enum TmStatus tm_matrix_get(const struct TmMatrix *m, size_t i, size_t j, int64_t *value);

/**
 * `a ⊗ b`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum TmStatus tm_matrix_mul(const struct TmMatrix *a,
                            const struct TmMatrix *b,
                            struct TmMatrix **out_matrix);

/**
 * `a ⊕ b`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum TmStatus tm_matrix_add(const struct TmMatrix *a,
                            const struct TmMatrix *b,
                            struct TmMatrix **out_matrix);

/**
 * Whether `a` and `b` are equal.
 *
 * # Safety
 * `a`, `b` must be live handles or null.
 */
bool tm_matrix_equal(const struct TmMatrix *a, const struct TmMatrix *b);

/**
 * # Safety
 * `m` must come from this library and not have been freed.
 */
void tm_matrix_free(struct TmMatrix *m);

/**
 * Checks every tuple of an encoded set against a word template and stores
 * the number of tuples that are not marginal in `failed`.
 *
 * # Safety
 * Both strings must be nul-terminated and `failed` writable.
 */
enum TmStatus tm_verify_set(const char *word_json, const char *set_json, size_t *failed);

/**
 * Runs `protocol` (`"sidelnikov"`, `"one-sided"`, `"sandwich"` or
 * `"multiblock"`) on a parameter document.
 *
 * # Safety
 * Both strings must be nul-terminated and `out` writable.
 */
enum TmStatus tm_run_protocol(const char *protocol,
                              const char *params_json,
                              struct TmTranscript **out_transcript);

/**
 * Whether both parties derived the same key. False for a null handle.
 *
 * # Safety
 * `t` must be a live handle or null.
 */
bool tm_transcript_agreed(const struct TmTranscript *t);

/**
 * A copy of one party's key.
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
enum TmStatus tm_transcript_key(const struct TmTranscript *t,
                                enum TmRole role,
                                struct TmMatrix **out_matrix);

/**
 * The transcript as a JSON document; free with [`tm_string_free`].
 *
 * # Safety
 * `t` must be a live handle or null.
 */
char *tm_transcript_to_json(const struct TmTranscript *t);

/**
 * # Safety
 * `t` must come from this library and not have been freed.
 */
void tm_transcript_free(struct TmTranscript *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TROPICAL_MARGINAL_H */
