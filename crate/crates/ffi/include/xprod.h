#ifndef XPROD_H
#define XPROD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of the C API.
 */
typedef enum XpStatus {
  XP_STATUS_OK = 0,
  XP_STATUS_NULL_POINTER = 1,
  XP_STATUS_INVALID_UTF8 = 2,
  XP_STATUS_INVALID_INPUT = 3,
  XP_STATUS_INVALID_SYSTEM = 4,
  XP_STATUS_PARSE = 5,
  XP_STATUS_RESOURCE = 6,
  XP_STATUS_UNSUPPORTED_MODE = 7,
  XP_STATUS_AMBIGUOUS = 8,
  XP_STATUS_WITNESS = 9,
  XP_STATUS_INTERNAL = 10,
} XpStatus;

/**
 * A crossed-product element over a system.
 */
typedef struct XpElement XpElement;

/**
 * A shift system.
 */
typedef struct XpSystem XpSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call into the library.
 */
const char *xp_last_error_message(void);

/**
 * Parses `{"full_shift": d}` or `{"alphabet": d, "adjacency": [[...]]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum XpStatus xp_system_from_json(const char *json, struct XpSystem **out);

/**
 * # Safety
 * `sys` must come from [`xp_system_from_json`] and not be used afterwards.
 */
void xp_system_free(struct XpSystem *sys);

/**
 * # Safety
 * `sys` must be a live handle and `out` a valid pointer.
 */
enum XpStatus xp_system_alphabet_size(const struct XpSystem *sys, size_t *out);

/**
 * Writes the verdict to `is_free` and, when not free, the certificate
 * `{"k": .., "l": .., "w": ".."}` to `certificate` (null otherwise).
 *
 * # Safety
 * `sys` must be a live handle; `is_free` and `certificate` valid pointers.
 */
enum XpStatus xp_system_is_topologically_free(const struct XpSystem *sys,
                                              bool *is_free,
                                              char **certificate);

/**
 * Full analysis report as JSON. `config` may be null for the defaults or
 * a JSON object overriding some of them.
 *
 * # Safety
 * `sys` must be a live handle, `config` null or a NUL-terminated string,
 * `out` a valid pointer.
 */
enum XpStatus xp_analyze(const struct XpSystem *sys, const char *config, char **out);

/**
 * Relation residual reports as a JSON array.
 *
 * # Safety
 * As for [`xp_analyze`].
 */
enum XpStatus xp_residuals(const struct XpSystem *sys, const char *config, char **out);

/**
 * Witness report for `f s^k (s*)^l f` with `f = 1_[word]`.
 *
 * # Safety
 * As for [`xp_analyze`]; `word` must be a NUL-terminated string.
 */
enum XpStatus xp_witness(const struct XpSystem *sys,
                         size_t k,
                         size_t l,
                         const char *word,
                         const char *config,
                         char **out);

/**
 * Parses `{"terms": [{"f": .., "k": .., "l": .., "g": ..}, ...]}`.
 *
 * # Safety
 * `sys` must be a live handle, `json` a NUL-terminated string, `out` valid.
 */
enum XpStatus xp_element_from_json(const struct XpSystem *sys,
                                   const char *json,
                                   struct XpElement **out);

/**
 * The generator `s`.
 *
 * # Safety
 * `sys` must be a live handle and `out` a valid pointer.
 */
enum XpStatus xp_element_s(const struct XpSystem *sys, struct XpElement **out);

/**
 * # Safety
 * `a` and `b` must be live handles over equal systems; `out` valid.
 */
enum XpStatus xp_element_multiply(const struct XpElement *a,
                                  const struct XpElement *b,
                                  struct XpElement **out);

/**
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum XpStatus xp_element_adjoint(const struct XpElement *e, struct XpElement **out);

/**
 * Serializes an element whose coefficients are all exact.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum XpStatus xp_element_to_json(const struct XpElement *e, char **out);

/**
 * The conditional expectation onto `C(X)` as a function in JSON form;
 * fails with `InvalidInput` when the result is not exact.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum XpStatus xp_element_conditional_expectation(const struct XpElement *e, char **out);

/**
 * # Safety
 * `e` must come from this library and not be used afterwards.
 */
void xp_element_free(struct XpElement *e);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void xp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XPROD_H */
