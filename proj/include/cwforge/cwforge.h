#ifndef CWFORGE_H
#define CWFORGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define CWF_API __attribute__((visibility("default")))
#else
#define CWF_API
#endif

/* Every call returns one of these; on anything but CWF_OK, cwf_last_error() explains. */
typedef enum {
    CWF_OK = 0,
    CWF_CHECK_FAILED = 1, /* a verification ran and found a mismatch */
    CWF_INPUT_ERROR = 2,  /* malformed input or violated precondition */
    CWF_INTERNAL_ERROR = 3
} cwf_status;

typedef struct cwf_graph cwf_graph;
typedef struct cwf_word cwf_word;
typedef struct cwf_term cwf_term;

/* Message of the last failing call on this thread; never NULL. */
CWF_API const char* cwf_last_error(void);
/* Frees strings returned through char** out-parameters. */
CWF_API void cwf_string_free(char* s);

/* Graphs. */
CWF_API cwf_status cwf_graph_parse(const char* text, cwf_graph** out);
CWF_API cwf_status cwf_graph_to_text(const cwf_graph* g, char** out);
CWF_API cwf_status cwf_graph_vertex_count(const cwf_graph* g, size_t* out);
CWF_API cwf_status cwf_graph_edge_count(const cwf_graph* g, size_t* out);
/* *out = 1 when an isomorphism exists (colors respected when respect_colors != 0). */
CWF_API cwf_status cwf_graph_isomorphic(const cwf_graph* a, const cwf_graph* b, int respect_colors, int* out);
CWF_API void cwf_graph_free(cwf_graph* g);

/* Linear words. */
CWF_API cwf_status cwf_word_parse(const char* text, cwf_word** out);
CWF_API cwf_status cwf_word_generate(int k, size_t length, uint64_t seed, cwf_word** out);
CWF_API cwf_status cwf_word_to_text(const cwf_word* w, char** out);
CWF_API cwf_status cwf_word_k(const cwf_word* w, int* out);
CWF_API cwf_status cwf_word_eval(const cwf_word* w, cwf_graph** out);
/* The linear clique decomposition as a term of width at most k + 1. */
CWF_API cwf_status cwf_word_to_term(const cwf_word* w, cwf_term** out);
CWF_API void cwf_word_free(cwf_word* w);

/* Clique terms. */
CWF_API cwf_status cwf_term_parse(const char* text, cwf_term** out);
CWF_API cwf_status cwf_term_to_text(const cwf_term* t, char** out);
CWF_API cwf_status cwf_term_eval(const cwf_term* t, cwf_graph** out);
CWF_API cwf_status cwf_term_width(const cwf_term* t, int* out);
CWF_API void cwf_term_free(cwf_term* t);

typedef struct {
    int width;
    double width_bound;
    size_t forest_depth;
    size_t semigroup_size;
    size_t idempotent_nodes;
    int coarse_image; /* 1 when the forest was built over the coarse image (k >= 3) */
} cwf_decompose_stats;

/* Bounded-width term for the graph of w; stats may be NULL. */
CWF_API cwf_status cwf_decompose(const cwf_word* w, cwf_term** out, cwf_decompose_stats* stats);
/* CWF_OK when t evaluates exactly to the graph of w, CWF_CHECK_FAILED otherwise. */
CWF_API cwf_status cwf_verify_decomposition(const cwf_word* w, const cwf_term* t);
CWF_API cwf_status cwf_verify_term_graph(const cwf_graph* g, const cwf_term* t);

/* Factorisation forest of the word's letter images as indented text, plus its depth and bound.
 * Returns CWF_CHECK_FAILED if the forest fails its own verification. */
CWF_API cwf_status cwf_forest(const cwf_word* w, char** text, size_t* depth, size_t* depth_bound);

/* Order lab on a seeded power context sigma^n over k colors. `claims` is "all" or a comma list.
 * The report has one "PASS <claim> ..." or "FAIL <claim>: <counterexample>" line per claim.
 * Returns CWF_CHECK_FAILED when some claim fails. */
CWF_API cwf_status cwf_orderlab(int k, int n, uint64_t seed, const char* claims, char** report);
/* Newline-separated claim names. */
CWF_API cwf_status cwf_orderlab_claims(char** out);

/* Runs "modp:<p>" or "connected" on t; *accepted is 0 or 1, state may be NULL. */
CWF_API cwf_status cwf_recognize(const cwf_term* t, const char* automaton, int* accepted, char** state);

#ifdef __cplusplus
}
#endif

#endif
