#ifndef FSTIRLING_H
#define FSTIRLING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FsEulerMode {
  FS_EULER_MODE_HARMONIC_OVER_F = 0,
  FS_EULER_MODE_F_ZETA = 1,
  FS_EULER_MODE_F_ZETA2R = 2,
} FsEulerMode;

typedef enum FsSigmaVariant {
  FS_SIGMA_VARIANT_SIGMA = 0,
  FS_SIGMA_VARIANT_SIGMA_TILDE = 1,
} FsSigmaVariant;

typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_UTF8 = 2,
  FS_STATUS_PARSE = 3,
  FS_STATUS_DOMAIN = 4,
  FS_STATUS_OUT_OF_RANGE = 5,
  FS_STATUS_ARITHMETIC = 6,
  FS_STATUS_ORACLE_CAP = 7,
  FS_STATUS_IO = 8,
  FS_STATUS_PANIC = 9,
} FsStatus;

// A validated `(f, t)` setting.
typedef struct FsContext FsContext;

// The reports of one verification suite.
typedef struct FsReport FsReport;

// A first-kind triangle with rows `0..=n_max`.
typedef struct FsTriangle FsTriangle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *fs_last_error(void);

// Library version as a static NUL-terminated string.
const char *fs_version(void);

// # Safety
// `s` is null or a string returned by this library and not yet freed.
void fs_string_free(char *s);

// Parses `f` (e.g. `linear:1,0`, `qpow:1`) and `t` (a rational or
// `symbolic`) into a new context.
//
// # Safety
// `f` and `t` are NUL-terminated strings; `out` is valid for writes.
enum FsStatus fs_context_new(const char *f, const char *t, struct FsContext **out);

// # Safety
// `ctx` is null or a context from [`fs_context_new`] not yet freed.
void fs_context_free(struct FsContext *ctx);

// Builds the first-kind triangle with rows `0..=n_max`.
//
// # Safety
// `ctx` is a live context; `out` is valid for writes.
enum FsStatus fs_triangle_new(const struct FsContext *ctx, size_t n_max, struct FsTriangle **out);

// # Safety
// `tri` is null or a triangle from [`fs_triangle_new`] not yet freed.
void fs_triangle_free(struct FsTriangle *tri);

// Number of the last row, or 0 for a null handle.
//
// # Safety
// `tri` is null or a live triangle.
size_t fs_triangle_n_max(const struct FsTriangle *tri);

// Entry `[n, k]` as text, e.g. `11` or `1 + 2*t^-1`.
//
// # Safety
// `tri` is a live triangle; `out` is valid for writes.
enum FsStatus fs_triangle_entry(const struct FsTriangle *tri, size_t n, size_t k, char **out);

// The whole triangle as JSON.
//
// # Safety
// `tri` is a live triangle; `out` is valid for writes.
enum FsStatus fs_triangle_to_json(const struct FsTriangle *tri, char **out);

// `F_n^{(p)}(t)` summed directly, as text.
//
// # Safety
// `ctx` is a live context; `out` is valid for writes.
enum FsStatus fs_harmonic(const struct FsContext *ctx, size_t p, size_t n, char **out);

// `σ_n(x)` or `σ̃_n(x)` as text; needs `x > n`.
//
// # Safety
// `ctx` is a live context; `out` is valid for writes.
enum FsStatus fs_sigma(const struct FsContext *ctx,
                       enum FsSigmaVariant variant,
                       size_t n,
                       size_t x,
                       char **out);

// Exact partial sum over `1 <= n <= terms` as a reduced fraction `a/b`.
// Uses the context's `f` at `t = 1`.
//
// # Safety
// `ctx` is a live context; `out` is valid for writes.
enum FsStatus fs_euler_sum(const struct FsContext *ctx,
                           uint32_t r,
                           size_t terms,
                           enum FsEulerMode mode,
                           char **out);

// Runs the named suite (e.g. `prop2`) for the context's setting. `max_n = 0`
// keeps the suite's default bound.
//
// # Safety
// `ctx` is a live context; `suite` is a NUL-terminated string; `out` is
// valid for writes.
enum FsStatus fs_verify(const struct FsContext *ctx,
                        const char *suite,
                        size_t max_n,
                        struct FsReport **out);

// # Safety
// `report` is null or a report from [`fs_verify`] not yet freed.
void fs_report_free(struct FsReport *report);

// Total number of checked cells, or 0 for a null handle.
//
// # Safety
// `report` is null or a live report.
size_t fs_report_cell_count(const struct FsReport *report);

// Number of failing cells, or 0 for a null handle.
//
// # Safety
// `report` is null or a live report.
size_t fs_report_failure_count(const struct FsReport *report);

// The reports as a JSON array.
//
// # Safety
// `report` is a live report; `out` is valid for writes.
enum FsStatus fs_report_to_json(const struct FsReport *report, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FSTIRLING_H */
