#ifndef INQDEF_H
#define INQDEF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define INQDEF_LANGUAGE_INQ 0

#define INQDEF_LANGUAGE_INQ_TENSOR 1

#define INQDEF_LANGUAGE_INQ_PLUS 2

#define INQDEF_LANGUAGE_INQ_MINUS 3

#define INQDEF_LANGUAGE_D 4

#define INQDEF_LANGUAGE_D_PLUS 5

#define INQDEF_LANGUAGE_ALL 6

#define INQDEF_THEOREM_IMPLICATION 0

#define INQDEF_THEOREM_GLOBALOR_D 1

#define INQDEF_THEOREM_GLOBALOR_DPLUS 2

#define INQDEF_MODEL_IMPLICATION 0

#define INQDEF_MODEL_DEPENDENCE 1

typedef enum InqdefStatus {
  INQDEF_STATUS_OK = 0,
  INQDEF_STATUS_NULL_ARGUMENT = 1,
  INQDEF_STATUS_INVALID_UTF8 = 2,
  INQDEF_STATUS_PARSE_ERROR = 3,
  INQDEF_STATUS_INVALID_ARGUMENT = 4,
  INQDEF_STATUS_COMPUTATION_ERROR = 5,
  INQDEF_STATUS_PANIC = 6,
} InqdefStatus;

// Opaque formula handle.
typedef struct InqdefFormula InqdefFormula;

// Opaque model handle.
typedef struct InqdefModel InqdefModel;

// Parses a model from its JSON description.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum InqdefStatus inqdef_model_from_json(const char *json, struct InqdefModel **out);

// One of the two canonical three-world models (`INQDEF_MODEL_*`).
//
// # Safety
// `out` must be a valid pointer.
enum InqdefStatus inqdef_model_canonical(uint32_t which, struct InqdefModel **out);

// # Safety
// `model` must be null or a handle from this library not yet freed.
void inqdef_model_free(struct InqdefModel *model);

// Number of worlds, or 0 for a null handle.
//
// # Safety
// `model` must be null or a live handle.
size_t inqdef_model_world_count(const struct InqdefModel *model);

// Parses a formula licensed by the given language (`INQDEF_LANGUAGE_*`).
//
// # Safety
// `source` must be a valid NUL-terminated string and `out` a valid pointer.
enum InqdefStatus inqdef_formula_parse(const char *source,
                                       uint32_t lang,
                                       struct InqdefFormula **out);

// # Safety
// `formula` must be null or a handle from this library not yet freed.
void inqdef_formula_free(struct InqdefFormula *formula);

// Canonical text of a formula.
//
// # Safety
// `formula` must be a live handle and `out` a valid pointer.
enum InqdefStatus inqdef_formula_render(const struct InqdefFormula *formula, char **out);

// Whether the state (bit `i` set for world `i`) supports the formula.
//
// # Safety
// Handles must be live and `out` a valid pointer.
enum InqdefStatus inqdef_supports(const struct InqdefModel *model,
                                  const struct InqdefFormula *formula,
                                  uint32_t state,
                                  bool *out);

// The proposition as maximal states, e.g. `{w1,w2},{w1,w3} ↓`.
//
// # Safety
// Handles must be live and `out` a valid pointer.
enum InqdefStatus inqdef_proposition_render(const struct InqdefModel *model,
                                            const struct InqdefFormula *formula,
                                            char **out);

// The proposition as JSON: `{"world_count": n, "maximal": [[world, ...], ...]}`.
//
// # Safety
// Handles must be live and `out` a valid pointer.
enum InqdefStatus inqdef_proposition_json(const struct InqdefModel *model,
                                          const struct InqdefFormula *formula,
                                          char **out);

// Whether two formulas have the same proposition in the model.
//
// # Safety
// Handles must be live and `out` a valid pointer.
enum InqdefStatus inqdef_equivalent_in(const struct InqdefModel *model,
                                       const struct InqdefFormula *left,
                                       const struct InqdefFormula *right,
                                       bool *out);

// Runs an undefinability harness (`INQDEF_THEOREM_*`) in its default
// signature and writes the JSON report.
//
// # Safety
// `out` must be a valid pointer.
enum InqdefStatus inqdef_verify_json(uint32_t which, char **out);

// As [`inqdef_verify_json`], in the given signature.
//
// # Safety
// `out` must be a valid pointer.
enum InqdefStatus inqdef_verify_in_json(uint32_t which, uint32_t lang, char **out);

// Closure report as JSON. `left` and `right` may be null; with both null
// only the constants seed the closure.
//
// # Safety
// Non-null handles must be live and `out` a valid pointer.
enum InqdefStatus inqdef_closure_json(const struct InqdefModel *model,
                                      uint32_t lang,
                                      const struct InqdefFormula *left,
                                      const struct InqdefFormula *right,
                                      char **out);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void inqdef_string_free(char *s);

// Message for the last failed call on this thread; empty after a
// successful call. Valid until the next call into the library.
const char *inqdef_last_error_message(void);

#endif  /* INQDEF_H */
