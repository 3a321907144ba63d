#ifndef VASSILIEV_H
#define VASSILIEV_H

/* Generated by cbindgen from vassiliev-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Sign convention selector.
typedef enum VsvConvention {
  VSV_CONVENTION_ADDITIVE = 0,
  VSV_CONVENTION_MULTIPLICATIVE = 1,
} VsvConvention;

// Invariant selector.
typedef enum VsvInvariant {
  VSV_INVARIANT_C2 = 0,
  VSV_INVARIANT_C4 = 1,
  VSV_INVARIANT_J2 = 2,
  VSV_INVARIANT_J3 = 3,
  VSV_INVARIANT_J4 = 4,
} VsvInvariant;

// Status code returned by fallible calls.
typedef enum VsvStatus {
  VSV_STATUS_OK = 0,
  VSV_STATUS_NULL_ARGUMENT = 1,
  VSV_STATUS_INVALID_UTF8 = 2,
  VSV_STATUS_PARSE_ERROR = 3,
  VSV_STATUS_DOMAIN_ERROR = 4,
} VsvStatus;

// Opaque evaluator handle holding the memo cache.
typedef struct VsvEvaluator VsvEvaluator;

// Opaque braid word handle.
typedef struct VsvWord VsvWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread; valid until the next failing call.
const char *vsv_last_error_message(void);

// Frees a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void vsv_string_free(char *s);

// Parses a braid word over the orientation string; the strand count is the
// orientation length. Returns null on error.
//
// # Safety
// `text` and `o` must be valid NUL-terminated strings.
struct VsvWord *vsv_word_parse(const char *text, const char *o);

// Builds the move word `BH_d^o(k)`. Returns null on error.
//
// # Safety
// `d` must point to `d_len` entries and `o` must be a valid string.
struct VsvWord *vsv_bh_word(size_t k, const int8_t *d, size_t d_len, const char *o);

// Renders a word back to grammar text. Free with `vsv_string_free`.
//
// # Safety
// `word` must be a live handle from this library.
char *vsv_word_render(const struct VsvWord *word);

// Whether the closure of the word is a knot.
//
// # Safety
// `word` must be a live handle; `out` must be writable.
enum VsvStatus vsv_word_is_knot(const struct VsvWord *word, bool *out);

// # Safety
// `word` must come from this library and not be freed twice.
void vsv_word_free(struct VsvWord *word);

// Expands a product of double crossings and renders the resulting sum as
// JSON (`[{coeff, word}]`, canonical order). Free with `vsv_string_free`.
//
// # Safety
// `word` must be a live handle; `out_json` must be writable.
enum VsvStatus vsv_expand_json(const struct VsvWord *word,
                               int64_t max_sing,
                               enum VsvConvention conv,
                               char **out_json);

// Runs the symbolic identity check for one move spec.
//
// # Safety
// Pointer arguments as in `vsv_bh_word`; `out_equal` must be writable.
enum VsvStatus vsv_check_symbolic(size_t k,
                                  const int8_t *d,
                                  size_t d_len,
                                  const char *o,
                                  enum VsvConvention conv,
                                  bool *out_equal);

// Creates an evaluator with a fresh memo cache.
struct VsvEvaluator *vsv_evaluator_new(void);

// # Safety
// `ev` must come from this library and not be freed twice.
void vsv_evaluator_free(struct VsvEvaluator *ev);

// Evaluates an invariant on a (possibly singular) word. The value is
// written as an exact `p/q` string; free it with `vsv_string_free`.
//
// # Safety
// `ev` and `word` must be live handles; `out_value` must be writable.
enum VsvStatus vsv_evaluate(const struct VsvEvaluator *ev,
                            enum VsvInvariant id,
                            const struct VsvWord *word,
                            char **out_value);

// The Jones polynomial of the closure, rendered in `t` (or in `sqrt(t)`
// for links with half-integer powers). Free with `vsv_string_free`.
//
// # Safety
// `word` must be a live handle; `out_value` must be writable.
enum VsvStatus vsv_jones(const struct VsvWord *word, char **out_value);

// The Conway polynomial of a knot closure, rendered in `z`.
//
// # Safety
// `word` must be a live handle; `out_value` must be writable.
enum VsvStatus vsv_conway(const struct VsvWord *word, char **out_value);

// Evaluates both sides of the difference formula and returns the full
// check report as JSON. `out_equal` reports exact equality.
//
// # Safety
// Pointer arguments as above; `t` and `x` must be valid strings.
enum VsvStatus vsv_check_theorem(const struct VsvEvaluator *ev,
                                 size_t k,
                                 const int8_t *d,
                                 size_t d_len,
                                 const char *o,
                                 const char *t,
                                 const char *x,
                                 enum VsvInvariant id,
                                 enum VsvConvention conv,
                                 bool singular_rhs,
                                 bool *out_equal,
                                 char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* VASSILIEV_H */
