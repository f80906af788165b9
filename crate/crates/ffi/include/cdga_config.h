#ifndef CDGA_CONFIG_H
#define CDGA_CONFIG_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first four match the CLI exit statuses.
 */
typedef enum CdgaStatus {
  CDGA_STATUS_OK = 0,
  CDGA_STATUS_PARSE_ERROR = 1,
  CDGA_STATUS_CHECK_FAILED = 2,
  CDGA_STATUS_PRECONDITION = 3,
  CDGA_STATUS_NULL_ARGUMENT = 4,
  CDGA_STATUS_INVALID_UTF8 = 5,
  CDGA_STATUS_BUFFER_TOO_SMALL = 6,
  CDGA_STATUS_INTERNAL = 7,
} CdgaStatus;

/**
 * A Poincaré duality CDGA.
 */
typedef struct CdgaAlgebra CdgaAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *cdga_last_error(void);

/**
 * Parses an algebra from JSON text and verifies Poincaré duality.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CdgaStatus cdga_algebra_from_json(const char *json, struct CdgaAlgebra **out);

/**
 * Loads a shipped preset such as `"s2xs3"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CdgaStatus cdga_algebra_from_preset(const char *name, struct CdgaAlgebra **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `a` must come from this library and not be used afterwards.
 */
void cdga_algebra_free(struct CdgaAlgebra *a);

/**
 * Total dimension of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t cdga_algebra_dimension(const struct CdgaAlgebra *a);

/**
 * Formal dimension `n`, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t cdga_algebra_formal_dimension(const struct CdgaAlgebra *a);

/**
 * Runs the exhaustive CDGA axiom check: `Ok` or `CheckFailed`.
 *
 * # Safety
 * `a` must be a live handle.
 */
enum CdgaStatus cdga_algebra_check(const struct CdgaAlgebra *a);

/**
 * Betti numbers. Writes up to `cap` entries to `out` and the full length
 * to `len`; returns `BufferTooSmall` if `cap` is short. `out` may be null
 * when `cap` is 0.
 *
 * # Safety
 * `a` must be a live handle, `out` valid for `cap` writes, `len` valid.
 */
enum CdgaStatus cdga_algebra_betti(const struct CdgaAlgebra *a,
                                   size_t *out,
                                   size_t cap,
                                   size_t *len);

/**
 * The diagonal class as text, e.g. `"1⊗y - y⊗1"`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum CdgaStatus cdga_algebra_diagonal(const struct CdgaAlgebra *a, char **out);

/**
 * The algebra serialized as JSON.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum CdgaStatus cdga_algebra_to_json(const struct CdgaAlgebra *a, char **out);

/**
 * Runs a CLI command and returns its JSON report through `out`. `args`
 * holds `nargs` strings, as after the command name on the command line;
 * files may be paths or preset names. Supported: `check FILE`,
 * `diagonal FILE`, `betti-fm2 FILE`, `cxi FILE [XI]`, `check-table FILE`,
 * `product A B OUT`, `classify-example Q...`. The return value is the
 * report status; the report is written even when a check fails.
 *
 * # Safety
 * `command` and each of `args[0..nargs]` must be NUL-terminated strings;
 * `out` must be a valid pointer.
 */
enum CdgaStatus cdga_run_command(const char *command,
                                 const char *const *args,
                                 size_t nargs,
                                 char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cdga_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CDGA_CONFIG_H */
