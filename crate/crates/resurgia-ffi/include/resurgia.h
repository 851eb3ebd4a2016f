/* C interface for the resurgia library. */

#ifndef RESURGIA_H
#define RESURGIA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define RESURGIA_OK 0

/**
 * Invalid input or unsatisfied precondition.
 */
#define RESURGIA_ERR_INVALID 1

/**
 * A computation budget or hard ceiling was exceeded.
 */
#define RESURGIA_ERR_BUDGET 2

/**
 * A required pointer argument was null.
 */
#define RESURGIA_ERR_NULL 3

/**
 * A string argument was not valid UTF-8.
 */
#define RESURGIA_ERR_UTF8 4

/**
 * An internal invariant failed.
 */
#define RESURGIA_ERR_INTERNAL 5

/**
 * Opaque graded-family handle.
 */
typedef struct ResurgiaFamily ResurgiaFamily;

/**
 * Opaque monomial-ideal handle.
 */
typedef struct ResurgiaIdeal ResurgiaIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread. The pointer stays valid
 * until the next failing call on the same thread; do not free it.
 */
const char *resurgia_last_error(void);

/**
 * Frees a string returned by any `*_json` or value-returning function.
 */
void resurgia_string_free(char *s);

/**
 * Parses an ideal from the inline grammar (`vars=x,y; gens=x^2, y`) or JSON.
 */
int resurgia_ideal_parse(const char *text, struct ResurgiaIdeal **out);

void resurgia_ideal_free(struct ResurgiaIdeal *ideal);

/**
 * Serializes an ideal to its JSON form.
 */
int resurgia_ideal_to_json(const struct ResurgiaIdeal *ideal, char **out);

/**
 * Builds a graded family from the shorthand grammar (`powers:I`,
 * `symbolic:I`, `closure-powers:I`, `piecewise:a,b,g[:i=p,...]`,
 * `truncate:<family>:<n>`), with `I` bound to the given ideal.
 */
int resurgia_family_parse(const char *shorthand,
                          const struct ResurgiaIdeal *ideal,
                          struct ResurgiaFamily **out);

void resurgia_family_free(struct ResurgiaFamily *family);

/**
 * Newton-Okounkov body of a family as JSON `{"status", "body"}`.
 */
int resurgia_okounkov_body_json(const struct ResurgiaFamily *family,
                                unsigned int budget,
                                char **out);

/**
 * Asymptotic resurgence of a pair of families as a result JSON object.
 */
int resurgia_asymptotic_resurgence_json(const struct ResurgiaFamily *a,
                                        const struct ResurgiaFamily *b,
                                        unsigned int budget,
                                        char **out);

/**
 * Finite (s, r) resurgence search as a result JSON object.
 */
int resurgia_resurgence_search_json(const struct ResurgiaFamily *a,
                                    const struct ResurgiaFamily *b,
                                    unsigned int s_max,
                                    unsigned int r_max,
                                    int closure,
                                    char **out);

/**
 * Skew Waldschmidt constant as a rational string `p/q`.
 */
int resurgia_waldschmidt(const struct ResurgiaFamily *family,
                         const unsigned int *weights,
                         unsigned int weights_len,
                         unsigned int budget,
                         char **out);

/**
 * Alexander-duality invariance check; writes 1 or 0 into `out`.
 */
int resurgia_duality_check(const struct ResurgiaIdeal *ideal, int *out);

/**
 * Rees-package resurgence of the builtin symmetric-minors family.
 */
int resurgia_symmetric_minors_resurgence_json(unsigned int m, unsigned int budget, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESURGIA_H */
