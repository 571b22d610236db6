#ifndef CRCLASS_H
#define CRCLASS_H

#pragma once

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes of every fallible call.
 */
typedef enum CrcStatus {
  CRC_STATUS_OK = 0,
  CRC_STATUS_NULL_POINTER = 1,
  CRC_STATUS_INVALID_UTF8 = 2,
  CRC_STATUS_PARSE = 3,
  CRC_STATUS_VALIDATION = 4,
  CRC_STATUS_UNSUPPORTED = 5,
  CRC_STATUS_INTERNAL = 6,
  CRC_STATUS_PANIC = 7,
} CrcStatus;

/*
 Verdict of a classification.
 */
typedef enum CrcVerdict {
  CRC_VERDICT_CLASS_I = 0,
  CRC_VERDICT_CLASS_II = 1,
  CRC_VERDICT_CLASS_III1 = 2,
  CRC_VERDICT_CLASS_III2 = 3,
  CRC_VERDICT_CLASS_IV1 = 4,
  CRC_VERDICT_CLASS_IV2 = 5,
  CRC_VERDICT_LEVI_FLAT = 6,
  CRC_VERDICT_DEGENERATE_M3_TIMES_R = 7,
  CRC_VERDICT_DEGENERATE_M3_TIMES_R2 = 8,
  CRC_VERDICT_DEGENERATE_M4_TIMES_R = 9,
  CRC_VERDICT_DEGENERATE_M3_TIMES_C = 10,
} CrcVerdict;

/*
 A validated manifold.
 */
typedef struct CrcManifold CrcManifold;

/*
 A classification report.
 */
typedef struct CrcReport CrcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer is
 valid until the next failing call on the same thread.
 */
const char *crc_last_error(void);

/*
 Library version as a static nul-terminated string.
 */
const char *crc_version(void);

/*
 Parses and validates a manifold JSON document
 (`{"n": .., "c": .., "phi": [..], "point": {"z": [..], "u": [..]}}`).

 # Safety
 `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum CrcStatus crc_manifold_from_json(const char *json, struct CrcManifold **out);

/*
 # Safety
 `m` must come from [`crc_manifold_from_json`] and not be used afterwards.
 */
void crc_manifold_free(struct CrcManifold *m);

/*
 CR dimension `n` and codimension `c`.

 # Safety
 `m` must be a live handle; `n` and `c` valid pointers.
 */
enum CrcStatus crc_manifold_dims(const struct CrcManifold *m, size_t *n, size_t *c);

/*
 Classifies a manifold.

 # Safety
 `m` must be a live handle and `out` a valid pointer.
 */
enum CrcStatus crc_classify(const struct CrcManifold *m, struct CrcReport **out);

/*
 # Safety
 `r` must come from [`crc_classify`] and not be used afterwards.
 */
void crc_report_free(struct CrcReport *r);

/*
 # Safety
 `r` must be a live handle and `out` a valid pointer.
 */
enum CrcStatus crc_report_verdict(const struct CrcReport *r, enum CrcVerdict *out);

/*
 Whether some base-point rank is below its generic rank.

 # Safety
 `r` must be a live handle and `out` a valid pointer.
 */
enum CrcStatus crc_report_sigma_flag(const struct CrcReport *r, bool *out);

/*
 The report as the same JSON document `crclass classify --json` prints.

 # Safety
 `r` must be a live handle and `out` a valid pointer.
 */
enum CrcStatus crc_report_json(const struct CrcReport *r, char **out);

/*
 Text rendering of the intrinsic frame.

 # Safety
 `m` must be a live handle and `out` a valid pointer.
 */
enum CrcStatus crc_frame_text(const struct CrcManifold *m, char **out);

/*
 Levi matrix, determinant and kernel data as JSON (codimension 1 only).

 # Safety
 `m` must be a live handle and `out` a valid pointer.
 */
enum CrcStatus crc_levi_json(const struct CrcManifold *m, char **out);

/*
 Generic rank of the bracket filtration up to `max_depth`.
 `stabilized_at` receives the stabilization depth, or 0 if none was seen.

 # Safety
 `m` must be a live handle; `rank` and `stabilized_at` valid pointers.
 */
enum CrcStatus crc_hull_rank(const struct CrcManifold *m,
                             uint32_t max_depth,
                             size_t *rank,
                             size_t *stabilized_at);

/*
 # Safety
 `s` must come from this library and not be used afterwards.
 */
void crc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRCLASS_H */
