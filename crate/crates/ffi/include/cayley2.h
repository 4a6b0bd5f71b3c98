#ifndef CAYLEY2_H
#define CAYLEY2_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum C2Status {
  C2_STATUS_OK = 0,
  C2_STATUS_NULL_POINTER = 1,
  C2_STATUS_INVALID_L_SHAPE = 2,
  C2_STATUS_NOT_ADMISSIBLE = 3,
  C2_STATUS_DIVISIBILITY = 4,
  C2_STATUS_INVALID_GROUP = 5,
  C2_STATUS_NOT_GENERATING = 6,
  C2_STATUS_CAP_EXCEEDED = 7,
  C2_STATUS_INFINITE_COEFFICIENT = 8,
  C2_STATUS_OUT_OF_RANGE = 9,
  C2_STATUS_NO_DIAGRAM = 10,
  C2_STATUS_OVERFLOW = 11,
  C2_STATUS_PARSE = 12,
  C2_STATUS_BUFFER_TOO_SMALL = 13,
  C2_STATUS_PANIC = 14,
} C2Status;

/**
 * Opaque 2-Cayley digraph.
 */
typedef struct C2Digraph C2Digraph;

/**
 * L-shape `L(l, h, w, y)`.
 */
typedef struct C2LShape {
  uint64_t l;
  uint64_t h;
  uint64_t w;
  uint64_t y;
} C2LShape;

/**
 * `U * M * V = diag(s1, s2)`, matrices row-major.
 */
typedef struct C2Snf {
  uint64_t s1;
  uint64_t s2;
  int64_t u[4];
  int64_t v[4];
} C2Snf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *c2_last_error_message(void);

/**
 * `ceil(sqrt(3N)) - 2`, or 0 for `N <= 1`.
 */
uint64_t c2_lower_bound(uint64_t n);

/**
 * Diameter `l + h - min(w, y) - 2` of a valid L-shape.
 *
 * # Safety
 * `shape` and `out` must be valid pointers or null.
 */
enum C2Status c2_lshape_diameter(const struct C2LShape *shape, uint64_t *out);

/**
 * Smith normal form of the L-shape matrix `[[l, -w], [-y, h]]`.
 *
 * # Safety
 * `shape` and `out` must be valid pointers or null.
 */
enum C2Status c2_smith_normal_form(const struct C2LShape *shape, struct C2Snf *out);

/**
 * `Cay(Z_s1 + Z_s2, {(a1, a2), (b1, b2)})`; the group is canonicalized and
 * negative coordinates are reduced.
 *
 * # Safety
 * `out` must be a valid pointer or null.
 */
enum C2Status c2_digraph_new(uint64_t s1,
                             uint64_t s2,
                             int64_t a1,
                             int64_t a2,
                             int64_t b1,
                             int64_t b2,
                             struct C2Digraph **out);

/**
 * Parses `"s1,s2;a1,a2;b1,b2"` or `"N;a;b"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string or null; `out` a valid pointer or null.
 */
enum C2Status c2_digraph_parse(const char *spec, struct C2Digraph **out);

/**
 * Digraph whose minimum distance diagram is `shape`.
 *
 * # Safety
 * `shape` and `out` must be valid pointers or null.
 */
enum C2Status c2_digraph_of(const struct C2LShape *shape, struct C2Digraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void c2_digraph_free(struct C2Digraph *d);

/**
 * Order of the group, or 0 for a null handle.
 *
 * # Safety
 * `d` must be a valid handle or null.
 */
uint64_t c2_digraph_order(const struct C2Digraph *d);

/**
 * Invariant factors `s1 | s2` and generators `a = (a1, a2)`, `b = (b1, b2)`.
 *
 * # Safety
 * `d` must be a valid handle; `group` must hold 2 values and `gens` 4, or be null.
 */
enum C2Status c2_digraph_components(const struct C2Digraph *d, uint64_t *group, uint64_t *gens);

/**
 * BFS diameter. `max_order = 0` uses the default cap.
 *
 * # Safety
 * `d` must be a valid handle or null; `out` a valid pointer or null.
 */
enum C2Status c2_digraph_diameter(const struct C2Digraph *d, uint64_t max_order, uint64_t *out);

/**
 * Extension over `Z_{m s1} + Z_{m s2}`.
 *
 * # Safety
 * `d` must be a valid handle or null; `out` a valid pointer or null.
 */
enum C2Status c2_digraph_extend(const struct C2Digraph *d, uint64_t m, struct C2Digraph **out);

/**
 * Quotient by `m`, which must divide `s1`.
 *
 * # Safety
 * `d` must be a valid handle or null; `out` a valid pointer or null.
 */
enum C2Status c2_digraph_quotient(const struct C2Digraph *d, uint64_t m, struct C2Digraph **out);

/**
 * Minimum distance diagrams in lexicographic order. Writes the total count to
 * `count`; returns `BufferTooSmall` when it exceeds `capacity`, after filling
 * the first `capacity` entries. `buf` may be null when `capacity` is 0.
 *
 * # Safety
 * `d` must be a valid handle; `buf` must hold `capacity` entries; `count` valid.
 */
enum C2Status c2_find_mdds(const struct C2Digraph *d,
                           struct C2LShape *buf,
                           size_t capacity,
                           size_t *count);

/**
 * Extension coefficient `c(N)`; `InfiniteCoefficient` when `N = 3t^2`.
 *
 * # Safety
 * `out` must be a valid pointer or null.
 */
enum C2Status c2_extension_coefficient(uint64_t n, uint64_t *out);

/**
 * True when a tight digraph of order `n` stays tight after an `m`-extension.
 */
bool c2_is_tight_extension(uint64_t n, uint64_t m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAYLEY2_H */
