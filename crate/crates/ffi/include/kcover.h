#ifndef KCOVER_H
#define KCOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum {
  KC_STATUS_OK = 0,
  KC_STATUS_NULL_POINTER = 1,
  KC_STATUS_INVALID_UTF8 = 2,
  KC_STATUS_PARSE = 3,
  KC_STATUS_INVALID_ARGUMENT = 4,
  KC_STATUS_BUDGET_EXHAUSTED = 5,
  /**
   * The search finished without finding what was asked for.
   */
  KC_STATUS_NOT_FOUND = 6,
  KC_STATUS_MALFORMED_CERTIFICATE = 7,
  KC_STATUS_INTERNAL = 8,
} KcStatus;

/**
 * Opaque engine handle (holds the memo cache; safe to share across threads).
 */
typedef struct KcEngine KcEngine;

/**
 * Opaque graph handle.
 */
typedef struct KcGraph KcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next kcover call on the same thread.
 */
const char *kc_last_error(void);

/**
 * Parses a graph name (`K8-K3`, `K3,3`, `K9-2K2`, ...) or a graph6 string.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
KcStatus kc_graph_parse(const char *text, KcGraph **out);

/**
 * Builds a graph from `edge_count` vertex pairs stored flat in `pairs`.
 *
 * # Safety
 * `pairs` must point to `2 * edge_count` integers (may be NULL when
 * `edge_count` is 0) and `out` must be valid.
 */
KcStatus kc_graph_from_edges(size_t order, const uint32_t *pairs, size_t edge_count, KcGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards. NULL is ignored.
 */
void kc_graph_free(KcGraph *g);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t kc_graph_order(const KcGraph *g);

/**
 * Number of edges, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t kc_graph_edge_count(const KcGraph *g);

/**
 * graph6 encoding; release with [`kc_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
KcStatus kc_graph_to_graph6(const KcGraph *g, char **out);

/**
 * New engine. `node_limit` caps each embedding search; 0 means unlimited.
 *
 * # Safety
 * `out` must be valid.
 */
KcStatus kc_engine_new(uint64_t node_limit, KcEngine **out);

/**
 * # Safety
 * `e` must come from this library and not be used afterwards. NULL is ignored.
 */
void kc_engine_free(KcEngine *e);

/**
 * Whether `g` embeds in `surface` (`sphere`, `torus`, `n2`, `s3`, ...).
 *
 * # Safety
 * Handles must be live, `surface` NUL-terminated and `out` valid.
 */
KcStatus kc_embeds(const KcEngine *e, const KcGraph *g, const char *surface, bool *out);

/**
 * Whether `g` fails `surface` while every single-edge deletion embeds.
 *
 * # Safety
 * Handles must be live, `surface` NUL-terminated and `out` valid.
 */
KcStatus kc_is_obstruction(const KcEngine *e, const KcGraph *g, const char *surface, bool *out);

/**
 * Searches for a Kuratowski covering with parameter `gtilde` and returns the
 * certificate as JSON (release with [`kc_string_free`]). Returns
 * `NotFound` and leaves `out` NULL when there is none.
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
KcStatus kc_find_covering(const KcEngine *e, const KcGraph *g, uint32_t gtilde, char **out);

/**
 * Re-checks a certificate with a cold engine. `out` receives the verdict;
 * malformed input yields `MalformedCertificate`.
 *
 * # Safety
 * `json` must be NUL-terminated and `out` valid.
 */
KcStatus kc_verify_certificate(const char *json, bool *out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void kc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KCOVER_H */
