/* C interface to the ellwp lattice-group engine.
 *
 * Conventions:
 *   - Every function returns an ellwp_status; outputs go through pointers.
 *   - On any failure the return value names the class of error and
 *     ellwp_last_error() holds a message (thread-local, valid until the next
 *     failing call on the same thread).
 *   - Strings returned through char** are heap copies; release them with
 *     ellwp_string_free.  Handles are released with their _free function.
 *   - Rational numbers travel as decimal strings "p" or "p/q"; PL maps as
 *     JSON breakpoint arrays [["x","y"],...]; large integers as decimal
 *     strings.
 */

#ifndef ELLWP_H
#define ELLWP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ellwp_status {
  ELLWP_OK = 0,
  ELLWP_ERR_PARSE = 1,  /* malformed term/JSON/rational text */
  ELLWP_ERR_ARG = 2,    /* contract violation: bad handle, option, alphabet */
  ELLWP_ERR_BUDGET = 3, /* diagram or candidate budget exhausted */
  ELLWP_ERR_ITER = 4,   /* conjugator orbit iteration limit */
  ELLWP_ERR_FAIL = 5    /* anything else */
} ellwp_status;

typedef struct ellwp_alphabet ellwp_alphabet;
typedef struct ellwp_term ellwp_term;
typedef struct ellwp_plmap ellwp_plmap;
typedef struct ellwp_conjugator ellwp_conjugator;

typedef struct ellwp_decide_options {
  uint64_t max_diagrams; /* 0 means the default cap */
  int jobs;              /* <= 1 sequential */
  int deterministic;     /* nonzero forces sequential exploration */
} ellwp_decide_options;

const char* ellwp_version(void);
const char* ellwp_last_error(void);
void ellwp_string_free(char* s);

/* --- alphabets and terms ------------------------------------------------ */

ellwp_status ellwp_alphabet_new(const char* const* names, int count, ellwp_alphabet** out);
void ellwp_alphabet_free(ellwp_alphabet* a);
int ellwp_alphabet_size(const ellwp_alphabet* a);
/* Borrowed pointer, valid for the alphabet's lifetime; NULL if out of range. */
const char* ellwp_alphabet_name(const ellwp_alphabet* a, int i);

ellwp_status ellwp_term_parse(const ellwp_alphabet* a, const char* text, ellwp_term** out);
void ellwp_term_free(ellwp_term* t);
ellwp_status ellwp_term_print(const ellwp_term* t, char** out);
/* Canonical join-of-meets normal form as text. */
ellwp_status ellwp_term_normal_form(const ellwp_term* t, char** out);

/* --- free lattice-group decision ---------------------------------------- */

/* verdict: 1 = equals identity, 0 = does not.  witness_json (optional out,
 * may be NULL) receives a diagram witnessing a non-identity verdict, or NULL
 * when the verdict is identity.  diagrams (optional) receives the count of
 * diagrams explored. */
ellwp_status ellwp_decide(const ellwp_term* t, const ellwp_decide_options* opts,
                          int* verdict, char** witness_json, uint64_t* diagrams);
/* sign: 0 identity, 1 strictly positive, -1 strictly negative,
 * 2 incomparable with the identity. */
ellwp_status ellwp_sign(const ellwp_term* t, const ellwp_decide_options* opts, int* sign);
/* Seed-driven random search for an order-permutation assignment moving a
 * point under t.  found: 1 with witness_json set, 0 with *witness_json NULL. */
ellwp_status ellwp_find_witness(const ellwp_term* t, uint64_t budget, uint64_t seed,
                                int* found, char** witness_json);

/* --- wreath products ----------------------------------------------------- */

/* g_oracle: "free" (diagram decision) or "z2" (one-generator coefficient
 * group).  verdict as in ellwp_decide. */
ellwp_status ellwp_wreath_decide(const ellwp_term* t, const char* shift_gen,
                                 const char* g_oracle, uint64_t max_diagrams, int* verdict);
ellwp_status ellwp_lex_wreath_decide(const ellwp_term* t, const char* inner_shift_gen,
                                     const char* outer_shift_gen, const char* g_oracle,
                                     uint64_t max_diagrams, int* verdict);
/* partition: "x=left,y=right,..." assigning every generator a component id.
 * factors_json receives {"<component>": "<term text>", ...}. */
ellwp_status ellwp_sum_factor(const ellwp_term* t, const char* partition, char** factors_json);

/* --- finitely presented quotients ---------------------------------------- */

/* presentation_json: {"generators":[...], "relators":["<term>",...]}.
 * certificate_json: {"kind":"proved"|"refuted"|"unknown", ...}. */
ellwp_status ellwp_ideal_semidecide(const char* presentation_json, const char* term_text,
                                    uint64_t budget, uint64_t max_diagrams, int jobs,
                                    char** certificate_json);
ellwp_status ellwp_solve(const char* presentation_json, const char* term_text,
                         uint64_t budget, uint64_t max_diagrams, int jobs,
                         char** certificate_json);
/* pairs_json: [["<u term>","<v term>"], ...] over the g generators. */
ellwp_status ellwp_gdagger(const char* const* g_gens, int gen_count, const char* pairs_json,
                           int m_max, int k_max, char** presentation_json);

/* --- meet-string numbering ------------------------------------------------ */

/* index: non-negative decimal string of any size. */
ellwp_status ellwp_godel_decode(const ellwp_alphabet* a, const char* index,
                                char** meet_string_text);
/* Canonicalizes text into a meet string (a meet of group words) and returns
 * the index whose padding component is pad (decimal string). */
ellwp_status ellwp_godel_encode(const ellwp_alphabet* a, const char* meet_string_text,
                                const char* pad, char** index);

/* --- PL maps and conjugators ---------------------------------------------- */

ellwp_status ellwp_plmap_parse(const char* breakpoints_json, ellwp_plmap** out);
void ellwp_plmap_free(ellwp_plmap* m);
ellwp_status ellwp_plmap_print(const ellwp_plmap* m, char** breakpoints_json);
ellwp_status ellwp_plmap_apply(const ellwp_plmap* m, const char* x, char** y);
/* Evaluates a term under {"gen": <breakpoints>, ...}. */
ellwp_status ellwp_term_eval_plmap(const ellwp_term* t, const char* assignment_json,
                                   char** map_json);

/* Conjugator h with h^-1 f h = g for maps with equal bump counts. */
ellwp_status ellwp_conjugator_new(const char* f_json, const char* g_json,
                                  ellwp_conjugator** out);
/* Single-bump form with explicit anchors and optional seed segment h0
 * (breakpoints JSON or NULL for the affine default). */
ellwp_status ellwp_conjugator_new_anchored(const char* f_json, const char* g_json,
                                           const char* alpha, const char* beta,
                                           const char* h0_json, ellwp_conjugator** out);
void ellwp_conjugator_free(ellwp_conjugator* c);
/* direction >= 0 applies h, < 0 applies h^-1. */
ellwp_status ellwp_conjugator_apply(const ellwp_conjugator* c, const char* x, int direction,
                                    uint64_t iter_budget, char** y);

#ifdef __cplusplus
}
#endif

#endif /* ELLWP_H */
