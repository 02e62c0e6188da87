#ifndef CCGROWTH_H
#define CCGROWTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_ARGUMENT = 1,
  CC_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed presentation or word text.
   */
  CC_STATUS_SYNTAX = 3,
  /**
   * Unknown generator or relator problems.
   */
  CC_STATUS_ALPHABET = 4,
  CC_STATUS_PARAMETER = 5,
  /**
   * Needs a C'(1/6) presentation, or a rule the mode does not provide.
   */
  CC_STATUS_UNSUPPORTED = 6,
  /**
   * Budget or radius exceeded.
   */
  CC_STATUS_RESOURCE = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  CC_STATUS_PANIC = 8,
} CcStatus;

/**
 * Dehn's algorithm over one presentation.
 */
typedef struct CcDehn CcDehn;

/**
 * Parsed finitely presented group.
 */
typedef struct CcPresentation CcPresentation;

/**
 * Rips construction `G` over a quotient `Q`.
 */
typedef struct CcRips CcRips;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, static storage.
 */
const char *cc_version(void);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *cc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void cc_string_free(char *s);

/**
 * Parses presentation text (`gens a b ; rel [a,b]`).
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out` must be writable.
 */
enum CcStatus cc_presentation_parse(const char *source, struct CcPresentation **out);

/**
 * # Safety
 * `p` must be null or a live handle from this library.
 */
void cc_presentation_free(struct CcPresentation *p);

/**
 * Normal-form text of the presentation; free with [`cc_string_free`].
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_presentation_to_text(const struct CcPresentation *p, char **out);

/**
 * Number of generators and relators.
 *
 * # Safety
 * `p` must be a live handle; both outputs must be writable.
 */
enum CcStatus cc_presentation_shape(const struct CcPresentation *p,
                                    size_t *generators,
                                    size_t *relators);

/**
 * C'(num/den) check. Writes the verdict to `passed` and, when `report`
 * is not null, the JSON report.
 *
 * # Safety
 * `p` must be a live handle; `passed` must be writable; `report` may be null.
 */
enum CcStatus cc_sc_check(const struct CcPresentation *p,
                          uint64_t num,
                          uint64_t den,
                          bool *passed,
                          char **report);

/**
 * Rips construction with parameter `k`; `complete` adds y-rules.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_rips_new(const struct CcPresentation *q,
                          uint32_t k,
                          bool complete,
                          struct CcRips **out);

/**
 * # Safety
 * `r` must be null or a live handle from this library.
 */
void cc_rips_free(struct CcRips *r);

/**
 * New presentation handle holding a copy of `G`.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_rips_g_presentation(const struct CcRips *r, struct CcPresentation **out);

/**
 * Upper bound on `ln ||χ(q)^n(c)||` from count matrices along a geodesic
 * representative of `q^n`; `q_radius` sizes the exact Q metric.
 *
 * # Safety
 * `r` must be a live handle; words must be NUL-terminated; `out` writable.
 */
enum CcStatus cc_growth_ln_upper(const struct CcRips *r,
                                 const char *q_word,
                                 const char *class_,
                                 int64_t n,
                                 uint32_t q_radius,
                                 double *out);

/**
 * Dehn context over a copy of `p`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_dehn_new(const struct CcPresentation *p, struct CcDehn **out);

/**
 * # Safety
 * `d` must be null or a live handle from this library.
 */
void cc_dehn_free(struct CcDehn *d);

/**
 * Whether the presentation passed C'(1/6), which makes verdicts exact.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_dehn_sc_verified(const struct CcDehn *d, bool *out);

/**
 * Dehn-reduced form of `word`; free with [`cc_string_free`].
 *
 * # Safety
 * `d` must be a live handle; `word` NUL-terminated; `out` writable.
 */
enum CcStatus cc_dehn_reduce(const struct CcDehn *d, const char *word, char **out);

/**
 * Exact word problem; `Unsupported` unless the presentation is C'(1/6).
 *
 * # Safety
 * `d` must be a live handle; `word` NUL-terminated; `out` writable.
 */
enum CcStatus cc_dehn_is_trivial(const struct CcDehn *d, const char *word, bool *out);

/**
 * `true` when Dehn's algorithm reaches the empty word, which proves
 * triviality in any presentation; `false` proves nothing by itself.
 *
 * # Safety
 * `d` must be a live handle; `word` NUL-terminated; `out` writable.
 */
enum CcStatus cc_dehn_proves_trivial(const struct CcDehn *d, const char *word, bool *out);

/**
 * Exact word length of `z^n` in the Heisenberg group, `z = [a,b]`, from a
 * ball of the given radius.
 *
 * # Safety
 * `out` must be writable.
 */
enum CcStatus cc_heisenberg_z_power_length(uint32_t radius, int64_t n, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CCGROWTH_H */
