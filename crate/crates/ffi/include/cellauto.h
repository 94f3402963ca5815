#ifndef CELLAUTO_H
#define CELLAUTO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the non-zero values match the command-line exit codes
 * where they overlap.
 */
typedef enum CellautoStatus {
  CELLAUTO_STATUS_OK = 0,
  CELLAUTO_STATUS_INVALID_INPUT = 3,
  CELLAUTO_STATUS_RESOURCE_LIMIT = 4,
  CELLAUTO_STATUS_NULL_POINTER = 5,
  CELLAUTO_STATUS_PANIC = 6,
} CellautoStatus;

typedef enum CellautoVerdict {
  CELLAUTO_VERDICT_YES = 0,
  CELLAUTO_VERDICT_NO = 1,
  CELLAUTO_VERDICT_UNKNOWN = 2,
} CellautoVerdict;

/**
 * A periodic, eventually bi-periodic or finite configuration.
 */
typedef struct CellautoConfig CellautoConfig;

/**
 * A cellular automaton.
 */
typedef struct CellautoRule CellautoRule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next failing call on this thread.
 */
const char *cellauto_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void cellauto_string_free(char *s);

/**
 * Looks up a builtin rule (`rule110`, `zigzag:rule110`, ...) or reads a
 * rule file at that path.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum CellautoStatus cellauto_rule_builtin(const char *name, struct CellautoRule **out);

/**
 * Parses a rule in the text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CellautoStatus cellauto_rule_parse(const char *text, struct CellautoRule **out);

/**
 * # Safety
 * `rule` must be null or a handle from this library, not yet freed.
 */
void cellauto_rule_free(struct CellautoRule *rule);

/**
 * Number of states, or 0 for a null handle.
 *
 * # Safety
 * `rule` must be null or a live handle.
 */
uintptr_t cellauto_rule_num_states(const struct CellautoRule *rule);

/**
 * Parses a configuration over the alphabet of `rule`.
 *
 * # Safety
 * `rule` must be a live handle, `text` a NUL-terminated string and `out`
 * writable.
 */
enum CellautoStatus cellauto_config_parse(const struct CellautoRule *rule,
                                          const char *text,
                                          struct CellautoConfig **out);

/**
 * # Safety
 * `config` must be null or a handle from this library, not yet freed.
 */
void cellauto_config_free(struct CellautoConfig *config);

/**
 * Advances `config` by `steps` steps in place. Finite patterns shrink by
 * the radius at every step. On failure the configuration is unchanged.
 *
 * # Safety
 * `rule` and `config` must be live handles.
 */
enum CellautoStatus cellauto_config_step(const struct CellautoRule *rule,
                                         struct CellautoConfig *config,
                                         uintptr_t steps);

/**
 * Writes the configuration in the text format to `*out`.
 *
 * # Safety
 * `rule` and `config` must be live handles and `out` writable.
 */
enum CellautoStatus cellauto_config_to_text(const struct CellautoRule *rule,
                                            const struct CellautoConfig *config,
                                            char **out);

/**
 * Center state after `t` steps of a pattern of `len` cells covering the
 * radius `r·t` ball: a word of length `2rt+1` in 1D, or a square of that
 * side stored row by row from the south in 2D.
 *
 * # Safety
 * `cells` must point to `len` readable states and `out` be writable.
 */
enum CellautoStatus cellauto_pred(const struct CellautoRule *rule,
                                  uintptr_t t,
                                  const uint32_t *cells,
                                  uintptr_t len,
                                  uint32_t *out);

/**
 * Transient and cycle length of the orbit of a periodic configuration.
 *
 * # Safety
 * `rule` and `config` must be live handles; `transient` and `cycle`
 * writable.
 */
enum CellautoStatus cellauto_cycle_structure(const struct CellautoRule *rule,
                                             const struct CellautoConfig *config,
                                             uint64_t *transient,
                                             uint64_t *cycle);

/**
 * Whether state `q` of the zigzag automaton over `inner` ever appears at
 * cell 0 of `config`. `config` holds zigzag states, e.g. parsed against
 * the rule `zigzag:<inner>`. `witness_time` receives the first time for a
 * yes answer and 0 otherwise; it may be null.
 *
 * # Safety
 * `inner` and `config` must be live handles; `verdict` writable.
 */
enum CellautoStatus cellauto_ubpred_zigzag(const struct CellautoRule *inner,
                                           const struct CellautoConfig *config,
                                           uint32_t q,
                                           enum CellautoVerdict *verdict,
                                           uint64_t *witness_time);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CELLAUTO_H */
