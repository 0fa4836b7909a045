/* SPDX-License-Identifier: MIT OR Apache-2.0 */

#ifndef BKLKIT_H
#define BKLKIT_H

/* Generated by cbindgen from crates/bklkit-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every fallible call.
typedef enum BklStatus {
  // Success.
  BKL_STATUS_OK = 0,
  // A required pointer argument was null.
  BKL_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  BKL_STATUS_INVALID_UTF8 = 2,
  // An argument could not be parsed or is out of range.
  BKL_STATUS_USAGE = 3,
  // An internal consistency check failed.
  BKL_STATUS_INVARIANT = 4,
  // Any other failure, including a caught panic.
  BKL_STATUS_INTERNAL = 5,
} BklStatus;

// Opaque handle to a computed canonical or dual canonical column.
typedef struct BklColumn BklColumn;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Compute the column of `f` over the sign sequence `seq`.
//
// `seq` is a string of `0`/`1`, `f` a comma-separated list of integers,
// `kind` either `"canonical"` or `"dual"`. A `window` of zero or less picks
// the level automatically. On success `*out` receives a new handle.
//
// # Safety
// String arguments must be null or nul-terminated; `out` must be null or
// valid for one pointer write.
enum BklStatus bkl_column_new(const char *seq,
                              const char *f,
                              const char *kind,
                              int32_t window,
                              struct BklColumn **out);

// Number of nonzero entries of a column; zero for a null handle.
//
// # Safety
// `col` must be null or a live handle from [`bkl_column_new`].
size_t bkl_column_len(const struct BklColumn *col);

// Window level the column was computed at; zero for a null handle.
//
// # Safety
// `col` must be null or a live handle from [`bkl_column_new`].
int32_t bkl_column_window(const struct BklColumn *col);

// Serialize a column as JSON into a new string `*out`.
//
// # Safety
// `col` must be null or a live handle; `out` must be null or valid for one
// pointer write.
enum BklStatus bkl_column_to_json(const struct BklColumn *col, char **out);

// Release a column handle; null is ignored.
//
// # Safety
// `col` must be null or a handle from [`bkl_column_new`] not yet freed.
void bkl_column_free(struct BklColumn *col);

// Compute an irreducible (`"irr"`) or tilting (`"tilt"`) character as JSON.
//
// `lambda` is a comma-separated weight; a `window` of zero or less picks the
// level automatically.
//
// # Safety
// String arguments must be null or nul-terminated; `out` must be null or
// valid for one pointer write.
enum BklStatus bkl_character_json(const char *seq,
                                  const char *lambda,
                                  const char *kind,
                                  int32_t window,
                                  char **out);

// Release a string returned by this library; null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library not yet freed.
void bkl_string_free(char *s);

// Message of the last failure on this thread, or null if none. The pointer
// stays valid until the next failing call on the same thread.
const char *bkl_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BKLKIT_H */
