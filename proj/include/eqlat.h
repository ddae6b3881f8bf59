/* eqlat — equational-theory latent-space toolkit, C interface.
 *
 * Every object is an opaque handle created and released by the library.
 * Functions return EQLAT_OK (0) on success or a nonzero status; the
 * thread-local message behind eqlat_last_error() describes the failure.
 * Strings returned through char** are heap-allocated; release them with
 * eqlat_string_free().
 */
#ifndef EQLAT_H
#define EQLAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eqlat_status {
  EQLAT_OK = 0,
  EQLAT_ERR_INVALID_ARGUMENT = 1,
  EQLAT_ERR_PARSE = 2,
  EQLAT_ERR_IO = 3,
  EQLAT_ERR_DATA = 4,
  EQLAT_ERR_LIMIT = 5,
  EQLAT_ERR_CONVERGENCE = 6,
  EQLAT_ERR_NOT_FOUND = 7,
  EQLAT_ERR_INTERNAL = 8
} eqlat_status;

typedef struct eqlat_corpus eqlat_corpus;
typedef struct eqlat_sample eqlat_sample;
typedef struct eqlat_matrix eqlat_matrix;
typedef struct eqlat_embedding eqlat_embedding;
typedef struct eqlat_graph eqlat_graph; /* preorder + its condensation */
typedef struct eqlat_proof eqlat_proof;

const char* eqlat_version(void);
const char* eqlat_last_error(void);
void eqlat_string_free(char* s);

/* --- equations ----------------------------------------------------------- */

eqlat_status eqlat_equation_canonical(const char* text, char** out);
eqlat_status eqlat_equation_conjugate(const char* text, char** out);
eqlat_status eqlat_equation_metrics(const char* text, int* ops_lhs,
                                    int* ops_rhs, int* num_vars);

/* --- corpus ---------------------------------------------------------------- */

eqlat_status eqlat_corpus_enumerate(int max_ops, eqlat_corpus** out);
eqlat_status eqlat_corpus_load(const char* path, eqlat_corpus** out);
eqlat_status eqlat_corpus_save(const eqlat_corpus* c, const char* path);
void eqlat_corpus_free(eqlat_corpus* c);
eqlat_status eqlat_corpus_size(const eqlat_corpus* c, int64_t* out);
eqlat_status eqlat_corpus_equation(const eqlat_corpus* c, int64_t index,
                                   char** out);
/* EQLAT_ERR_NOT_FOUND when the law is outside the corpus. */
eqlat_status eqlat_corpus_index_of(const eqlat_corpus* c, const char* text,
                                   int64_t* out);
eqlat_status eqlat_corpus_conjugate_index(const eqlat_corpus* c, int64_t index,
                                          int64_t* out);
eqlat_status eqlat_corpus_self_conjugate_count(const eqlat_corpus* c,
                                               int64_t* out);
eqlat_status eqlat_corpus_stats_json(const eqlat_corpus* c, char** out);
/* Sidecar lines "equation <-> number". */
eqlat_status eqlat_corpus_load_numbering(eqlat_corpus* c, const char* path);

/* --- magma samples ---------------------------------------------------------- */

eqlat_status eqlat_sample_generate(int64_t n, int magma_size, uint64_t seed,
                                   int symmetric, eqlat_sample** out);
eqlat_status eqlat_sample_load(const char* path, eqlat_sample** out);
eqlat_status eqlat_sample_save(const eqlat_sample* s, const char* path);
void eqlat_sample_free(eqlat_sample* s);
eqlat_status eqlat_sample_count(const eqlat_sample* s, int64_t* out);
eqlat_status eqlat_sample_magma_size(const eqlat_sample* s, int* out);
/* Copies the row-major table of one magma; cap must be >= N*N. */
eqlat_status eqlat_sample_table(const eqlat_sample* s, int64_t index,
                                uint8_t* buf, size_t cap);

/* --- pairings and the feature matrix --------------------------------------- */

eqlat_status eqlat_stone_exact(const eqlat_corpus* c, int64_t eq_index,
                               const eqlat_sample* s, int64_t magma_index,
                               uint64_t tuple_budget, uint64_t* num,
                               uint64_t* den, double* value);
eqlat_status eqlat_stone_mc(const eqlat_corpus* c, int64_t eq_index,
                            const eqlat_sample* s, int64_t magma_index,
                            int64_t samples, uint64_t seed, double* value);

/* mode: "auto" | "exact" | "mc" */
eqlat_status eqlat_matrix_build(const eqlat_corpus* c, const eqlat_sample* s,
                                const char* mode, uint64_t exact_budget,
                                int64_t mc_samples, uint64_t mc_seed,
                                int store_fractions, int threads,
                                eqlat_matrix** out);
eqlat_status eqlat_matrix_load(const char* path, eqlat_matrix** out);
eqlat_status eqlat_matrix_save(const eqlat_matrix* m, const char* path,
                               uint64_t config_hash);
eqlat_status eqlat_matrix_save_csv(const eqlat_matrix* m, const char* path);
void eqlat_matrix_free(eqlat_matrix* m);
eqlat_status eqlat_matrix_rows(const eqlat_matrix* m, int64_t* out);
eqlat_status eqlat_matrix_cols(const eqlat_matrix* m, int64_t* out);
eqlat_status eqlat_matrix_value(const eqlat_matrix* m, int64_t row,
                                int64_t col, double* out);
eqlat_status eqlat_matrix_row_exact(const eqlat_matrix* m, int64_t row,
                                    int* out);
eqlat_status eqlat_matrix_expectation_variance(const eqlat_matrix* m,
                                               int64_t row, double* mean,
                                               double* variance);
/* Sorted (value, multiplicity) pairs. */
eqlat_status eqlat_matrix_spectrum_json(const eqlat_matrix* m, int64_t row,
                                        char** out);
/* product_variant != 0 emits the all-cross-pairs measure instead of the
 * aligned multiset. */
eqlat_status eqlat_matrix_interference_json(const eqlat_matrix* m,
                                            int64_t row_a, int64_t row_b,
                                            int product_variant, char** out);

/* --- embedding --------------------------------------------------------------- */

/* corpus/sample may be NULL; when given (and the sample is symmetric) their
 * involutions stabilize near-degenerate eigenvectors. */
eqlat_status eqlat_pca_embed(const eqlat_matrix* m, int k,
                             const eqlat_corpus* corpus,
                             const eqlat_sample* sample, int threads,
                             eqlat_embedding** out);
void eqlat_embedding_free(eqlat_embedding* e);
eqlat_status eqlat_embedding_rows(const eqlat_embedding* e, int64_t* out);
eqlat_status eqlat_embedding_k(const eqlat_embedding* e, int* out);
eqlat_status eqlat_embedding_coord(const eqlat_embedding* e, int64_t row,
                                   int component, double* out);
eqlat_status eqlat_embedding_fix_signs(eqlat_embedding* e,
                                       const eqlat_matrix* m,
                                       const eqlat_corpus* c);
eqlat_status eqlat_embedding_meta_json(const eqlat_embedding* e,
                                       uint64_t config_hash, char** out);
eqlat_status eqlat_embedding_save_csv(const eqlat_embedding* e,
                                      const char* path);
eqlat_status eqlat_embedding_load_csv(const char* path, eqlat_embedding** out);

eqlat_status eqlat_regress(const double* xs, const double* ys, int64_t n,
                           double* slope, double* intercept, double* r2);

/* --- implication graph -------------------------------------------------------- */

eqlat_status eqlat_graph_load(const char* path, const eqlat_corpus* c,
                              eqlat_graph** out);
void eqlat_graph_free(eqlat_graph* g);
eqlat_status eqlat_graph_vertices(const eqlat_graph* g, int64_t* out);
eqlat_status eqlat_graph_total_implications(const eqlat_graph* g,
                                            int64_t* out);
/* Computes cliques, the clique order and its reduction (idempotent). */
eqlat_status eqlat_graph_condense(eqlat_graph* g);
eqlat_status eqlat_graph_stats_json(eqlat_graph* g, char** out);
eqlat_status eqlat_graph_longest_json(eqlat_graph* g, int top, char** out);
eqlat_status eqlat_graph_parallel_json(eqlat_graph* g,
                                       const eqlat_embedding* emb,
                                       double angle_tol, double length_tol,
                                       int64_t max_out, char** out);

/* --- latent geometry ------------------------------------------------------------ */

/* self_pairs: "include" | "exclude" */
eqlat_status eqlat_geometry_edge_stats_json(const eqlat_embedding* emb,
                                            eqlat_graph* g,
                                            const char* self_pairs,
                                            char** out);
eqlat_status eqlat_geometry_cliques_csv(const eqlat_embedding* emb,
                                        eqlat_graph* g, const char* path);
eqlat_status eqlat_geometry_cross_clique_csv(eqlat_graph* g, const char* path);
eqlat_status eqlat_geometry_scene_csv(const eqlat_embedding* emb,
                                      eqlat_graph* g, const char* path);

/* --- entailment proofs ----------------------------------------------------------- */

eqlat_status eqlat_proof_parse(const char* text, eqlat_proof** out);
eqlat_status eqlat_proof_load(const char* path, eqlat_proof** out);
void eqlat_proof_free(eqlat_proof* p);
/* depth/size_cap <= 0 keep the proof's own limits. proved is 0 or 1;
 * a 0 verdict is "not found within bounds", not a refutation. */
eqlat_status eqlat_proof_verify_json(eqlat_proof* p, int depth, int size_cap,
                                     int* proved, char** out);
/* consistent is 0 when some magma satisfies the source but not the target. */
eqlat_status eqlat_proof_check_semantically_json(const eqlat_proof* p,
                                                 const eqlat_sample* s,
                                                 int* consistent, char** out);

/* --- pipeline ---------------------------------------------------------------------- */

eqlat_status eqlat_pipeline_run(const char* config_text, int threads,
                                char** report_json);
eqlat_status eqlat_pipeline_run_file(const char* config_path, int threads,
                                     char** report_json);
/* kind: spectrum | interference | scene | regression | scree.
 * args_json: parameters per kind (may be NULL or "{}").
 * Returns the written paths as a JSON array. */
eqlat_status eqlat_plot_emit(const char* config_path, const char* kind,
                             const char* args_json, int threads,
                             char** files_json);

#ifdef __cplusplus
}
#endif

#endif /* EQLAT_H */
