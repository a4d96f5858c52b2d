/* C ABI for the gridlink engine: exact grid-diagram link invariants. */

#ifndef GRIDLINK_H
#define GRIDLINK_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Success.
#define GRIDLINK_OK 0

// A verification check computed but did not hold.
#define GRIDLINK_ERR_CHECK 1

// Malformed input: parse failure, marking constraint violation,
// illegal move, or unknown option value.
#define GRIDLINK_ERR_INPUT 2

// The computation would exceed the configured size cap.
#define GRIDLINK_ERR_RESOURCE 3

// A required pointer argument was NULL.
#define GRIDLINK_ERR_NULL 4

// An internal invariant failed; the library state is still sound.
#define GRIDLINK_ERR_INTERNAL 5

// An oriented-link grid diagram (opaque).
typedef struct GridlinkGrid GridlinkGrid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a grid from its text or JSON form.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must point to
// writable `GridlinkGrid*` storage.
int32_t gridlink_grid_parse(const char *text, struct GridlinkGrid **out);

// Builds a grid from 1-based column arrays `xs[i]`, `os[i]` of
// length `n` (row i hosts its X in column `xs[i]` and its O in
// column `os[i]`).
//
// # Safety
// `xs` and `os` must point to `n` readable elements; `out` must
// point to writable `GridlinkGrid*` storage.
int32_t gridlink_grid_from_arrays(size_t n,
                                  const size_t *xs,
                                  const size_t *os,
                                  struct GridlinkGrid **out);

// Releases a grid handle. NULL is a no-op.
//
// # Safety
// `g` must be NULL or a pointer returned by a `gridlink_grid_*`
// constructor that has not been freed.
void gridlink_grid_free(struct GridlinkGrid *g);

// Writes grid data (size, components, orientation counts, curvature,
// base permutation) as a JSON object.
//
// # Safety
// `g` must be a live grid handle; `out_json` must point to writable
// `char*` storage.
int32_t gridlink_info_json(const struct GridlinkGrid *g, char **out_json);

// Writes the normalized Conway function Γ in canonical fraction text
// (variables t1..tμ, half-integer exponents in lowest terms).
//
// # Safety
// `g` must be a live grid handle; `out_text` must point to writable
// `char*` storage.
int32_t gridlink_conway(const struct GridlinkGrid *g, char **out_text);

// Writes the graded Euler characteristic of the hat homology.
// `route` selects the computation: "homology", "det", or "gamma";
// all routes return identical text on every valid input. `max_n`
// caps the homology route's grid size (pass 0 for the default).
//
// # Safety
// `g` must be a live grid handle; `route` NULL or NUL-terminated;
// `out_text` must point to writable `char*` storage.
int32_t gridlink_euler(const struct GridlinkGrid *g,
                       const char *route,
                       size_t max_n,
                       char **out_text);

// Writes the bigraded tilde homology dimensions as JSON:
// `{"total_rank", "tilde": [{"maslov", "alexander", "dim"}, ...]}`,
// plus `"hat"` when `with_hat` is nonzero. Alexander entries are
// exact-fraction strings. `max_n` caps the grid size (0 = default).
//
// # Safety
// `g` must be a live grid handle; `out_json` must point to writable
// `char*` storage.
int32_t gridlink_hfk_json(const struct GridlinkGrid *g,
                          size_t max_n,
                          int32_t with_hat,
                          char **out_json);

// Runs the full cross-verification battery (route agreement, the
// determinant bridge, symmetries, deconvolution) and writes the
// report as JSON. Returns 0 when every check passed, 1 when the
// report contains a failed check (JSON is written in both cases).
// `max_homology_n` / `max_statesum_n` cap the routes (0 = defaults).
//
// # Safety
// `g` must be a live grid handle; `out_json` must point to writable
// `char*` storage.
int32_t gridlink_check_json(const struct GridlinkGrid *g,
                            size_t max_homology_n,
                            size_t max_statesum_n,
                            char **out_json);

// Returns the most recent error message on the calling thread, or
// NULL if none. The caller owns the string.
char *gridlink_last_error_message(void);

// Releases a string returned by this library. NULL is a no-op.
//
// # Safety
// `s` must be NULL or a string returned by this library that has not
// been freed.
void gridlink_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRIDLINK_H */
