#ifndef ULRICH_FFI_H
#define ULRICH_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every exported function.
typedef enum UlrichStatus {
  ULRICH_STATUS_OK = 0,
  ULRICH_STATUS_NULL_ARGUMENT = 1,
  ULRICH_STATUS_INVALID_UTF8 = 2,
  ULRICH_STATUS_PARSE = 3,
  ULRICH_STATUS_CONFIG = 4,
  ULRICH_STATUS_DOMAIN = 5,
  ULRICH_STATUS_BUDGET_EXCEEDED = 6,
  ULRICH_STATUS_PRECISION_EXHAUSTED = 7,
  ULRICH_STATUS_INVARIANT_VIOLATION = 8,
  ULRICH_STATUS_INDEX_OUT_OF_RANGE = 9,
  ULRICH_STATUS_PANIC = 10,
} UlrichStatus;

// A ring together with its lazily computed Ulrich ideals.
typedef struct UlrichRing UlrichRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a ring from a JSON spec such as `{"field":2,"generators":["t^3","t^7"]}`.
//
// # Safety
// `spec_json` must be a NUL-terminated string and `out` a valid pointer.
enum UlrichStatus ulrich_ring_new(const char *spec_json, struct UlrichRing **out);

// Releases a handle from `ulrich_ring_new`. Null is accepted.
//
// # Safety
// `ring` must come from `ulrich_ring_new` and not be used afterwards.
void ulrich_ring_free(struct UlrichRing *ring);

// Writes the ring's invariants as a JSON object.
//
// # Safety
// `ring` must be a live handle and `out` a valid pointer.
enum UlrichStatus ulrich_ring_profile_json(const struct UlrichRing *ring, char **out);

// Number of Ulrich ideals; the first call runs the enumeration.
//
// # Safety
// `ring` must be a live handle and `out` a valid pointer.
enum UlrichStatus ulrich_ring_ulrich_count(const struct UlrichRing *ring, size_t *out);

// Generators of the `index`-th Ulrich ideal, as a JSON array of series strings.
//
// # Safety
// `ring` must be a live handle and `out` a valid pointer.
enum UlrichStatus ulrich_ring_ulrich_generators(const struct UlrichRing *ring,
                                                size_t index,
                                                char **out);

// Tests the ideal generated by a comma-separated list of series.
// `is_ulrich_out` receives 1 or 0.
//
// # Safety
// `ring` must be a live handle, `generators` NUL-terminated, `is_ulrich_out` valid.
enum UlrichStatus ulrich_ring_check(const struct UlrichRing *ring,
                                    const char *generators,
                                    int32_t *is_ulrich_out);

// Message of the last failure on this thread, or null. Valid until the next failing call.
const char *ulrich_last_error_message(void);

// Releases a string returned by this library. Null is accepted.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void ulrich_string_free(char *s);

// Library version, static storage.
const char *ulrich_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ULRICH_FFI_H */
