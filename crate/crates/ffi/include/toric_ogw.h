#ifndef TORIC_OGW_H
#define TORIC_OGW_H

/* Generated by cbindgen from toric-ogw-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every FFI entry point.
 */
typedef enum OgwStatus {
  /**
   * The call succeeded.
   */
  OGW_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  OGW_STATUS_NULL_POINTER = 1,
  /**
   * An input string was not valid UTF-8.
   */
  OGW_STATUS_INVALID_UTF8 = 2,
  /**
   * The manifest failed to parse.
   */
  OGW_STATUS_PARSE_ERROR = 3,
  /**
   * The manifest parsed but violates a construction invariant.
   */
  OGW_STATUS_INVALID_GEOMETRY = 4,
  /**
   * A computation rejected its input (for example an out-of-range ray, or
   * a volume request needing a triangulation).
   */
  OGW_STATUS_COMPUTE_ERROR = 5,
  /**
   * The GKZ check ran but at least one residual survived.
   */
  OGW_STATUS_RESIDUAL_FAILURE = 6,
  /**
   * A panic was caught at the boundary.
   */
  OGW_STATUS_PANIC = 7,
} OgwStatus;

/**
 * Opaque handle to a parsed, validated geometry.
 */
typedef struct OgwGeometry OgwGeometry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse and validate a manifest document. On success `*out` owns a geometry
 * handle that must be released with [`ogw_geometry_free`].
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be a valid
 * pointer to a writable pointer slot.
 */
enum OgwStatus ogw_geometry_parse(const char *text, struct OgwGeometry **out);

/**
 * Release a geometry handle. Null is accepted and ignored.
 *
 * # Safety
 * `handle` must be null or a pointer previously returned by
 * [`ogw_geometry_parse`] that has not been freed.
 */
void ogw_geometry_free(struct OgwGeometry *handle);

/**
 * The truncation order the manifest requests (the default when unset).
 *
 * # Safety
 * `handle` must be a live geometry handle; `out` must be writable.
 */
enum OgwStatus ogw_default_order(const struct OgwGeometry *handle, uint32_t *out);

/**
 * Open Gromov-Witten generating function as `GEN` records.
 *
 * # Safety
 * `handle` must be a live geometry handle; `out` must be writable.
 */
enum OgwStatus ogw_generating_function(const struct OgwGeometry *handle,
                                       uint32_t order,
                                       char **out);

/**
 * SYZ-map components as `SYZ` records (component index first).
 *
 * # Safety
 * `handle` must be a live geometry handle; `out` must be writable.
 */
enum OgwStatus ogw_syz_map(const struct OgwGeometry *handle, uint32_t order, char **out);

/**
 * One correction series as `XI` records (ray index first).
 *
 * # Safety
 * `handle` must be a live geometry handle; `out` must be writable.
 */
enum OgwStatus ogw_xi(const struct OgwGeometry *handle, uintptr_t ray, uint32_t order, char **out);

/**
 * Forward mirror-map series parts as `LOGQ` records (component index first;
 * the leading `log y_a` term is implicit).
 *
 * # Safety
 * `handle` must be a live geometry handle; `out` must be writable.
 */
enum OgwStatus ogw_mirror_map(const struct OgwGeometry *handle, uint32_t order, char **out);

/**
 * Inverted mirror-map components as `INVMAP` records (component index first).
 *
 * # Safety
 * `handle` must be a live geometry handle; `out` must be writable.
 */
enum OgwStatus ogw_inverse_mirror_map(const struct OgwGeometry *handle, uint32_t order, char **out);

/**
 * Normalized polytope volume (uses the manifest's cones when present).
 *
 * # Safety
 * `handle` must be a live geometry handle; `out` must be writable.
 */
enum OgwStatus ogw_volume(const struct OgwGeometry *handle, uint64_t *out);

/**
 * Run the GKZ annihilation suite; `*out` receives `RESIDUAL` records
 * followed by the `VOLUME` record. Returns `ResidualFailure` (with `*out`
 * still populated) when any residual survives.
 *
 * # Safety
 * `handle` must be a live geometry handle; `out` must be writable.
 */
enum OgwStatus ogw_gkz_check(const struct OgwGeometry *handle,
                             uint32_t order,
                             uint32_t degree_bound,
                             char **out);

/**
 * Detail message for the most recent failure on this thread, or null when
 * the last call succeeded. The caller frees it with [`ogw_string_free`].
 */
char *ogw_last_error_message(void);

/**
 * Release a string returned by this library. Null is accepted and ignored.
 *
 * # Safety
 * `s` must be null or a string pointer returned by this library that has
 * not been freed.
 */
void ogw_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TORIC_OGW_H */
