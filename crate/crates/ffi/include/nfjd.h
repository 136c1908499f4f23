#ifndef NFJD_H
#define NFJD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; nonzero mirrors the CLI exit codes.
 */
typedef enum NfjdStatus {
  Ok = 0,
  InvalidInput = 2,
  ModelInconsistency = 3,
  SearchCapExceeded = 4,
  NullPointer = 5,
} NfjdStatus;

/**
 * Opaque model handle.
 */
typedef struct NfjdModel NfjdModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON model into a handle. On success writes the handle to
 * `out_model` and returns Ok; the caller owns the handle and must
 * release it with `nfjd_model_free`.
 *
 * # Safety
 * `json` must be a NUL-terminated UTF-8 string; `out_model` must be a
 * valid pointer.
 */
enum NfjdStatus nfjd_model_parse_json(const char *json, struct NfjdModel **out_model);

/**
 * Releases a model handle. Accepts NULL.
 *
 * # Safety
 * `model` must be NULL or a handle returned by `nfjd_model_parse_json`
 * that has not already been freed.
 */
void nfjd_model_free(struct NfjdModel *model);

/**
 * Decides NF_n = NJD_n and writes the verdict (with certificates) as a
 * JSON string to `out_json`. `n = 0` lets the library pick the horizon;
 * `max_exponent = 0` uses the default search cap.
 *
 * # Safety
 * `model` must be a live handle; `out_json` must be a valid pointer.
 * The returned string must be released with `nfjd_string_free`.
 */
enum NfjdStatus nfjd_decide_json(const struct NfjdModel *model,
                                 uint64_t n,
                                 uint64_t max_exponent,
                                 char **out_json);

/**
 * Writes the Reidemeister orbit graph at horizon `n` as a JSON string.
 *
 * # Safety
 * Same contract as `nfjd_decide_json`.
 */
enum NfjdStatus nfjd_graph_json(const struct NfjdModel *model, uint64_t n, char **out_json);

/**
 * Writes the Reidemeister orbit graph at horizon `n` in DOT format.
 *
 * # Safety
 * Same contract as `nfjd_decide_json`.
 */
enum NfjdStatus nfjd_graph_dot(const struct NfjdModel *model, uint64_t n, char **out_dot);

/**
 * Computes NF_n, the minimal number of n-periodic points.
 *
 * # Safety
 * `model` must be a live handle; `out_nf` must be a valid pointer.
 */
enum NfjdStatus nfjd_nf(const struct NfjdModel *model, uint64_t n, uint64_t *out_nf);

/**
 * Releases a string returned by this library. Accepts NULL.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library that has not
 * already been freed.
 */
void nfjd_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NFJD_H */
