#ifndef RELCOMM_H
#define RELCOMM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RELCOMM_API __declspec(dllexport)
#else
#define RELCOMM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct relcomm_algebra relcomm_algebra;
typedef struct relcomm_relation relcomm_relation;

typedef enum relcomm_status {
  RELCOMM_OK = 0,
  RELCOMM_E_PARSE = 1,      /* malformed JSON, s-expression or relation expression */
  RELCOMM_E_INVALID = 2,    /* well-formed but rejected: arity, range, kind, universe */
  RELCOMM_E_UNKNOWN_ID = 3, /* unknown condition, suite or scheme id */
  RELCOMM_E_CAPPED = 4,     /* a closure hit its caps */
  RELCOMM_E_INTERNAL = 5
} relcomm_status;

typedef enum relcomm_format { RELCOMM_FORMAT_TEXT = 0, RELCOMM_FORMAT_JSON = 1 } relcomm_format;

/* Message describing the last failure on the calling thread. Never NULL. */
RELCOMM_API const char* relcomm_last_error(void);
RELCOMM_API const char* relcomm_version(void);
/* Releases strings returned through char** out-parameters. */
RELCOMM_API void relcomm_string_free(char* s);

/* ---- algebras ---- */

RELCOMM_API relcomm_status relcomm_algebra_parse(const char* json, relcomm_algebra** out);
RELCOMM_API void relcomm_algebra_free(relcomm_algebra* a);
RELCOMM_API size_t relcomm_algebra_size(const relcomm_algebra* a);
/* Name, signature and relation counts (counts only for size <= 4). */
RELCOMM_API relcomm_status relcomm_algebra_info(const relcomm_algebra* a, relcomm_format fmt,
                                                char** out);

/* ---- relations ---- */

/* Relation literal {"pairs": [[a,b],...], "close": "none" | "reflexive-compatible" |
   "tolerance" | "congruence"}; the bare words "id" and "full" are also accepted. */
RELCOMM_API relcomm_status relcomm_relation_parse(const relcomm_algebra* a, const char* literal,
                                                  relcomm_relation** out);
RELCOMM_API void relcomm_relation_free(relcomm_relation* r);
/* "{(0,0),(1,1)}" */
RELCOMM_API relcomm_status relcomm_relation_to_string(const relcomm_relation* r, char** out);
RELCOMM_API int relcomm_relation_contains(const relcomm_relation* r, uint32_t a, uint32_t b);

typedef struct relcomm_caps {
  size_t max_elements;      /* default 5000000 */
  size_t max_tuple_width;   /* default 32 */
  size_t max_table_entries; /* default 1 << 24 */
} relcomm_caps;

RELCOMM_API void relcomm_caps_init(relcomm_caps* c);

/* ---- commutators ---- */

typedef enum relcomm_commutator_variant {
  RELCOMM_COMMUTATOR_ONE = 0, /* transitive closure of the bottom rows */
  RELCOMM_COMMUTATOR_CG = 1   /* congruence generated by the bottom rows */
} relcomm_commutator_variant;

/* r and s must be reflexive compatible. m_size, when non-NULL, receives |M(r,s)|. */
RELCOMM_API relcomm_status relcomm_commutator(const relcomm_algebra* a, const relcomm_relation* r,
                                              const relcomm_relation* s,
                                              relcomm_commutator_variant variant,
                                              const relcomm_caps* caps, size_t* m_size,
                                              relcomm_relation** out);

/* ---- condition checking ---- */

#define RELCOMM_MAX_N_LIST 8

typedef struct relcomm_strategy {
  uint64_t seed;               /* default 0 */
  size_t exhaustive_bits;      /* enumerate exhaustively when n(n-1) <= this; default 20 */
  size_t relation_samples;     /* relations sampled per kind otherwise; default 500 */
  size_t tuple_limit;          /* binding tuples visited exhaustively up to this; default 100000 */
  size_t tuple_samples;        /* binding tuples sampled beyond it; default 500 */
  int n_list[RELCOMM_MAX_N_LIST];
  size_t n_count;              /* default {2, 3} */
  int k_variant;               /* 0 pure (default), 1 seeded */
  int circ;                    /* reading of r°: 0 generated tolerance (default), 1 star(r | r-) */
  size_t max_counterexamples;  /* default 10 */
  relcomm_caps caps;
} relcomm_strategy;

RELCOMM_API void relcomm_strategy_init(relcomm_strategy* s);

typedef struct relcomm_check_summary {
  size_t conditions;
  size_t failed;  /* conditions with verdict "fails" (plus broken reductions for suites) */
  size_t capped;  /* instances excluded because a closure hit its caps */
} relcomm_check_summary;

/* Checks one condition id ("x32.iii", "x32.viii" for every n in the list, "x32.viii[n=4]")
   or, when is_suite is nonzero, every condition of a theorem id ("x32", "x22", "x32var",
   "x1c"). In JSON mode the output is NDJSON: one report per line, then a summary line
   for suites. */
RELCOMM_API relcomm_status relcomm_check(const relcomm_algebra* a, const char* id, int is_suite,
                                         const relcomm_strategy* strategy, relcomm_format fmt,
                                         char** out, relcomm_check_summary* summary);

/* ---- term schemes ---- */

typedef enum relcomm_outcome {
  RELCOMM_OUTCOME_CHAIN = 0,        /* a verified or unverified term chain */
  RELCOMM_OUTCOME_REFUTED = 1,      /* extraction: a refutation certificate */
  RELCOMM_OUTCOME_EXHAUSTED = 2,    /* search: no system within the bounds */
  RELCOMM_OUTCOME_INCONCLUSIVE = 3  /* caps were hit */
} relcomm_outcome;

/* scheme: "x32" or "x22" (also "x32.vii", "x22.vii"). */
RELCOMM_API relcomm_status relcomm_extract(const relcomm_algebra* a, const char* scheme,
                                           const relcomm_caps* caps, relcomm_format fmt,
                                           char** out, relcomm_outcome* outcome);

/* terms_json: a term-chain document or an array of s-expressions over x y z w u.
   scheme may be NULL when the document names one. all_hold receives 1 or 0. */
RELCOMM_API relcomm_status relcomm_verify(const relcomm_algebra* a, const char* scheme,
                                          const char* terms_json, relcomm_format fmt, char** out,
                                          int* all_hold);

RELCOMM_API relcomm_status relcomm_search(const relcomm_algebra* a, const char* scheme,
                                          size_t max_n, size_t max_depth,
                                          const relcomm_caps* caps, relcomm_format fmt,
                                          char** out, relcomm_outcome* outcome);

#ifdef __cplusplus
}
#endif

#endif
