#ifndef ULTRATREE_H
#define ULTRATREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum UtStatus {
  UT_STATUS_OK = 0,
  UT_STATUS_NULL_POINTER = 1,
  UT_STATUS_INVALID_UTF8 = 2,
  UT_STATUS_PARSE_ERROR = 3,
  UT_STATUS_UNKNOWN_NODE = 4,
  UT_STATUS_OUT_OF_RANGE = 5,
  UT_STATUS_INVALID_ARGUMENT = 6,
  UT_STATUS_ANALYSIS_ERROR = 7,
  UT_STATUS_PANIC = 8,
} UtStatus;

/**
 * A labeled square matrix of non-negative integer distances.
 */
typedef struct UtMatrix UtMatrix;

/**
 * A parsed phrase tree together with its node heights.
 */
typedef struct UtTree UtTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or NULL. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *ut_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ut_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void ut_string_free(char *s);

/**
 * Parse one bracketed tree such as `(S (A a) (B b))`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum UtStatus ut_tree_parse(const char *text, struct UtTree **out);

/**
 * # Safety
 * `tree` must be NULL or a handle from [`ut_tree_parse`], not yet freed.
 */
void ut_tree_free(struct UtTree *tree);

/**
 * Nodes are numbered 0..count in preorder; the root is 0.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_node_count(const struct UtTree *tree, size_t *out);

/**
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_leaf_count(const struct UtTree *tree, size_t *out);

/**
 * Preorder id of the `index`-th leaf, left to right.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_leaf(const struct UtTree *tree, size_t index, size_t *out);

/**
 * Category label of a node, as a new string.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_label(const struct UtTree *tree, size_t node, char **out);

/**
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_height(const struct UtTree *tree, size_t node, uint32_t *out);

/**
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_root_height(const struct UtTree *tree, uint32_t *out);

/**
 * Serialize back to bracketed text.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_to_string(const struct UtTree *tree, char **out);

/**
 * Leaf-to-leaf distance matrix, labeled by leaf category.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_leaf_matrix(const struct UtTree *tree, struct UtMatrix **out);

/**
 * Reflexive dominance.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_dominates(const struct UtTree *tree, size_t a, size_t b, bool *out);

/**
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_c_commands(const struct UtTree *tree, size_t a, size_t b, bool *out);

/**
 * True when `b` lies in the cu-domain of `a`.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_cu_commands(const struct UtTree *tree, size_t a, size_t b, bool *out);

/**
 * `governors` is a comma-separated category list, or NULL for the default
 * policy (`V,P`).
 *
 * # Safety
 * `tree` must be a live handle; `governors` NULL or NUL-terminated; `out`
 * must be writable.
 */
enum UtStatus ut_tree_governs(const struct UtTree *tree,
                              const char *governors,
                              size_t a,
                              size_t b,
                              bool *out);

/**
 * Number of ordered pairs on which c-command and cu-command disagree, over
 * leaves only or over every node.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_tree_theorem_disagreements(const struct UtTree *tree, bool all_nodes, size_t *out);

/**
 * Parse `{"labels": [...], "rows": [[...], ...]}`.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum UtStatus ut_matrix_from_json(const char *json, struct UtMatrix **out);

/**
 * The three-label phrase template at level `i`.
 *
 * # Safety
 * `out` must be writable.
 */
enum UtStatus ut_matrix_xbar_template(uint64_t i, struct UtMatrix **out);

/**
 * # Safety
 * `m` must be NULL or a matrix handle from this library, not yet freed.
 */
void ut_matrix_free(struct UtMatrix *m);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_matrix_size(const struct UtMatrix *m, size_t *out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_matrix_get(const struct UtMatrix *m, size_t row, size_t col, uint64_t *out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_matrix_label(const struct UtMatrix *m, size_t index, char **out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_matrix_to_json(const struct UtMatrix *m, char **out);

/**
 * Number of metric-axiom violations.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_matrix_metric_violations(const struct UtMatrix *m, size_t *out);

/**
 * Number of unordered label triples breaking the ultrametric inequality.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum UtStatus ut_matrix_ultrametric_triples(const struct UtMatrix *m, size_t *out);

/**
 * Determinant of the category feature matrix with the given A-P entry
 * (`1` or `-1`).
 *
 * # Safety
 * `out` must be writable.
 */
enum UtStatus ut_feature_determinant(int32_t f_ap, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ULTRATREE_H */
