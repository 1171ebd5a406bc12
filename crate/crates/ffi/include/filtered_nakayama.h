#ifndef FILTERED_NAKAYAMA_H
#define FILTERED_NAKAYAMA_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FnkStatus {
  FNK_STATUS_OK = 0,
  FNK_STATUS_NULL_POINTER = 1,
  FNK_STATUS_INVALID_UTF8 = 2,
  FNK_STATUS_PARSE_ERROR = 3,
  FNK_STATUS_INVALID_ARGUMENT = 4,
  /**
   * Definite negative answer, e.g. no rational lift exists.
   */
  FNK_STATUS_NEGATIVE = 5,
  /**
   * Truncated or underdetermined computation.
   */
  FNK_STATUS_INCONCLUSIVE = 6,
  FNK_STATUS_INTERNAL = 7,
} FnkStatus;

typedef struct FnkGroebnerBasis FnkGroebnerBasis;

/**
 * A filtered Nakayama lift, or a whole affine family of them.
 */
typedef struct FnkLift FnkLift;

/**
 * Parsed `.alg` presentation.
 */
typedef struct FnkPresentation FnkPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *fnk_last_error(void);

void fnk_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *fnk_version(void);

enum FnkStatus fnk_presentation_parse(const char *text, struct FnkPresentation **out);

void fnk_presentation_free(struct FnkPresentation *p);

/**
 * Number of generators, or 0 for NULL.
 */
size_t fnk_presentation_num_generators(const struct FnkPresentation *p);

/**
 * Number of relations, or 0 for NULL.
 */
size_t fnk_presentation_num_relations(const struct FnkPresentation *p);

/**
 * `2·maxdeg + 2`, or the file's `degree_bound` when present.
 */
size_t fnk_presentation_default_bound(const struct FnkPresentation *p);

/**
 * Truncated Gröbner basis. `*complete` receives whether completion finished.
 */
enum FnkStatus fnk_groebner(const struct FnkPresentation *p,
                            size_t degree_bound,
                            struct FnkGroebnerBasis **out,
                            bool *complete);

void fnk_groebner_free(struct FnkGroebnerBasis *g);

size_t fnk_groebner_len(const struct FnkGroebnerBasis *g);

/**
 * Element `index`, rendered over the presentation's generators.
 */
enum FnkStatus fnk_groebner_element(const struct FnkGroebnerBasis *g,
                                    const struct FnkPresentation *p,
                                    size_t index,
                                    char **out);

/**
 * Normal form of `poly` (text over the presentation's generators).
 */
enum FnkStatus fnk_normal_form(const struct FnkGroebnerBasis *g,
                               const struct FnkPresentation *p,
                               const char *poly,
                               char **out);

/**
 * Lifts a graded Nakayama matrix (`[a,b;c,d]` text, or NULL to use the
 * file's `graded_nakayama`). A positive-dimensional solution set still yields
 * a lift handle for its particular solution, with status `Inconclusive`.
 */
enum FnkStatus fnk_lift_nakayama(const struct FnkPresentation *p,
                                 const char *matrix,
                                 size_t degree_bound,
                                 struct FnkLift **out);

void fnk_lift_free(struct FnkLift *l);

size_t fnk_lift_dim(const struct FnkLift *l);

/**
 * Number of free directions in the shift (0 for a unique lift).
 */
size_t fnk_lift_free_directions(const struct FnkLift *l);

/**
 * Matrix entry `a_ij` as an exact rational string.
 */
enum FnkStatus fnk_lift_matrix_entry(const struct FnkLift *l, size_t i, size_t j, char **out);

/**
 * Shift entry `b_i` as an exact rational string.
 */
enum FnkStatus fnk_lift_shift_entry(const struct FnkLift *l, size_t i, char **out);

/**
 * Image of every generator, one `x -> …` line each.
 */
enum FnkStatus fnk_lift_render(const struct FnkLift *l,
                               const struct FnkPresentation *p,
                               char **out);

bool fnk_lift_is_calabi_yau(const struct FnkLift *l);

/**
 * Hopf classification as a JSON report. `*has_conclusions` is false when
 * the result is inconclusive.
 */
enum FnkStatus fnk_classify_hopf(const struct FnkPresentation *p,
                                 const struct FnkLift *l,
                                 bool assume_semisimple,
                                 bool assume_trivial_hdet,
                                 char **json_out,
                                 bool *has_conclusions);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FILTERED_NAKAYAMA_H */
