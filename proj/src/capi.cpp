#include "eqlat.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "eqlat/corpus.hpp"
#include "eqlat/error.hpp"
#include "eqlat/geometry.hpp"
#include "eqlat/graph.hpp"
#include "eqlat/herbrand.hpp"
#include "eqlat/magma.hpp"
#include "eqlat/pca.hpp"
#include "eqlat/pipeline.hpp"
#include "eqlat/stone.hpp"
#include "eqlat/version.hpp"

using namespace eqlat;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating exceptions into statuses.
template <typename F>
eqlat_status guarded(F&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    set_error(e.what());
    return EQLAT_ERR_PARSE;
  } catch (const InvalidArgument& e) {
    set_error(e.what());
    return EQLAT_ERR_INVALID_ARGUMENT;
  } catch (const LimitError& e) {
    set_error(e.what());
    return EQLAT_ERR_LIMIT;
  } catch (const IoError& e) {
    set_error(e.what());
    return EQLAT_ERR_IO;
  } catch (const ConvergenceError& e) {
    set_error(e.what());
    return EQLAT_ERR_CONVERGENCE;
  } catch (const DataError& e) {
    set_error(e.what());
    return EQLAT_ERR_DATA;
  } catch (const std::exception& e) {
    set_error(e.what());
    return EQLAT_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return EQLAT_ERR_INTERNAL;
  }
}

eqlat_status require(bool cond, const char* msg) {
  if (cond) return EQLAT_OK;
  set_error(msg);
  return EQLAT_ERR_INVALID_ARGUMENT;
}

}  // namespace

struct eqlat_corpus {
  Corpus impl;
};
struct eqlat_sample {
  MagmaSample impl;
};
struct eqlat_matrix {
  FeatureMatrix impl;
};
struct eqlat_embedding {
  LatentEmbedding impl;
};
struct eqlat_graph {
  ImplicationGraph impl;
  std::optional<Condensation> cond;
  Condensation& condensed() {
    if (!cond) cond = condense(impl);
    return *cond;
  }
};
struct eqlat_proof {
  HerbrandProof impl;
};

extern "C" {

const char* eqlat_version(void) { return kVersion; }

const char* eqlat_last_error(void) { return g_last_error.c_str(); }

void eqlat_string_free(char* s) { std::free(s); }

/* --- equations ----------------------------------------------------------- */

eqlat_status eqlat_equation_canonical(const char* text, char** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guarded([&] {
    *out = dup_string(Equation::parse(text).text());
    return EQLAT_OK;
  });
}

eqlat_status eqlat_equation_conjugate(const char* text, char** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guarded([&] {
    *out = dup_string(conjugate(Equation::parse(text)).text());
    return EQLAT_OK;
  });
}

eqlat_status eqlat_equation_metrics(const char* text, int* ops_lhs,
                                    int* ops_rhs, int* num_vars) {
  if (auto st = require(text && ops_lhs && ops_rhs && num_vars,
                        "null argument"))
    return st;
  return guarded([&] {
    EquationMetrics m = metrics(Equation::parse(text));
    *ops_lhs = m.signature.first;
    *ops_rhs = m.signature.second;
    *num_vars = m.num_vars;
    return EQLAT_OK;
  });
}

/* --- corpus ---------------------------------------------------------------- */

eqlat_status eqlat_corpus_enumerate(int max_ops, eqlat_corpus** out) {
  if (auto st = require(out != nullptr, "null output")) return st;
  return guarded([&] {
    *out = new eqlat_corpus{Corpus::enumerate(max_ops)};
    return EQLAT_OK;
  });
}

eqlat_status eqlat_corpus_load(const char* path, eqlat_corpus** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guarded([&] {
    *out = new eqlat_corpus{Corpus::load(path)};
    return EQLAT_OK;
  });
}

eqlat_status eqlat_corpus_save(const eqlat_corpus* c, const char* path) {
  if (auto st = require(c && path, "null argument")) return st;
  return guarded([&] {
    c->impl.save(path);
    return EQLAT_OK;
  });
}

void eqlat_corpus_free(eqlat_corpus* c) { delete c; }

eqlat_status eqlat_corpus_size(const eqlat_corpus* c, int64_t* out) {
  if (auto st = require(c && out, "null argument")) return st;
  *out = c->impl.size();
  return EQLAT_OK;
}

eqlat_status eqlat_corpus_equation(const eqlat_corpus* c, int64_t index,
                                   char** out) {
  if (auto st = require(c && out, "null argument")) return st;
  return guarded([&] {
    *out = dup_string(c->impl.at(index).text());
    return EQLAT_OK;
  });
}

eqlat_status eqlat_corpus_index_of(const eqlat_corpus* c, const char* text,
                                   int64_t* out) {
  if (auto st = require(c && text && out, "null argument")) return st;
  return guarded([&]() -> eqlat_status {
    auto idx = c->impl.index_of(Equation::parse(text));
    if (!idx) {
      set_error("equation is not in the corpus");
      return EQLAT_ERR_NOT_FOUND;
    }
    *out = *idx;
    return EQLAT_OK;
  });
}

eqlat_status eqlat_corpus_conjugate_index(const eqlat_corpus* c, int64_t index,
                                          int64_t* out) {
  if (auto st = require(c && out, "null argument")) return st;
  return guarded([&] {
    *out = c->impl.conjugate_index(index);
    return EQLAT_OK;
  });
}

eqlat_status eqlat_corpus_self_conjugate_count(const eqlat_corpus* c,
                                               int64_t* out) {
  if (auto st = require(c && out, "null argument")) return st;
  *out = c->impl.self_conjugate_count();
  return EQLAT_OK;
}

eqlat_status eqlat_corpus_stats_json(const eqlat_corpus* c, char** out) {
  if (auto st = require(c && out, "null argument")) return st;
  return guarded([&] {
    *out = dup_string(corpus_stats_json(c->impl).dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_corpus_load_numbering(eqlat_corpus* c, const char* path) {
  if (auto st = require(c && path, "null argument")) return st;
  return guarded([&] {
    c->impl.load_external_numbering(path);
    return EQLAT_OK;
  });
}

/* --- magma samples ---------------------------------------------------------- */

eqlat_status eqlat_sample_generate(int64_t n, int magma_size, uint64_t seed,
                                   int symmetric, eqlat_sample** out) {
  if (auto st = require(out != nullptr, "null output")) return st;
  return guarded([&] {
    *out = new eqlat_sample{
        MagmaSample::generate(n, magma_size, seed, symmetric != 0)};
    return EQLAT_OK;
  });
}

eqlat_status eqlat_sample_load(const char* path, eqlat_sample** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guarded([&] {
    *out = new eqlat_sample{MagmaSample::load(path)};
    return EQLAT_OK;
  });
}

eqlat_status eqlat_sample_save(const eqlat_sample* s, const char* path) {
  if (auto st = require(s && path, "null argument")) return st;
  return guarded([&] {
    s->impl.save(path);
    return EQLAT_OK;
  });
}

void eqlat_sample_free(eqlat_sample* s) { delete s; }

eqlat_status eqlat_sample_count(const eqlat_sample* s, int64_t* out) {
  if (auto st = require(s && out, "null argument")) return st;
  *out = s->impl.size();
  return EQLAT_OK;
}

eqlat_status eqlat_sample_magma_size(const eqlat_sample* s, int* out) {
  if (auto st = require(s && out, "null argument")) return st;
  *out = s->impl.magma_size();
  return EQLAT_OK;
}

eqlat_status eqlat_sample_table(const eqlat_sample* s, int64_t index,
                                uint8_t* buf, size_t cap) {
  if (auto st = require(s && buf, "null argument")) return st;
  return guarded([&]() -> eqlat_status {
    const Magma& m = s->impl.at(index);
    size_t need = size_t(m.size()) * size_t(m.size());
    if (cap < need) {
      set_error("buffer too small");
      return EQLAT_ERR_INVALID_ARGUMENT;
    }
    std::memcpy(buf, m.data(), need);
    return EQLAT_OK;
  });
}

/* --- pairings and the feature matrix --------------------------------------- */

eqlat_status eqlat_stone_exact(const eqlat_corpus* c, int64_t eq_index,
                               const eqlat_sample* s, int64_t magma_index,
                               uint64_t tuple_budget, uint64_t* num,
                               uint64_t* den, double* value) {
  if (auto st = require(c && s && num && den && value, "null argument"))
    return st;
  return guarded([&] {
    Fraction f = stone_pairing_exact(c->impl.at(eq_index),
                                     s->impl.at(magma_index), tuple_budget);
    *num = f.num;
    *den = f.den;
    *value = f.value();
    return EQLAT_OK;
  });
}

eqlat_status eqlat_stone_mc(const eqlat_corpus* c, int64_t eq_index,
                            const eqlat_sample* s, int64_t magma_index,
                            int64_t samples, uint64_t seed, double* value) {
  if (auto st = require(c && s && value, "null argument")) return st;
  return guarded([&] {
    *value = stone_pairing_mc(c->impl.at(eq_index), s->impl.at(magma_index),
                              samples, seed);
    return EQLAT_OK;
  });
}

eqlat_status eqlat_matrix_build(const eqlat_corpus* c, const eqlat_sample* s,
                                const char* mode, uint64_t exact_budget,
                                int64_t mc_samples, uint64_t mc_seed,
                                int store_fractions, int threads,
                                eqlat_matrix** out) {
  if (auto st = require(c && s && mode && out, "null argument")) return st;
  return guarded([&] {
    StoneConfig cfg;
    cfg.mode = StoneConfig::parse_mode(mode);
    if (exact_budget) cfg.exact_budget = exact_budget;
    if (mc_samples > 0) cfg.mc_samples = mc_samples;
    cfg.mc_seed = mc_seed;
    cfg.store_fractions = store_fractions != 0;
    *out = new eqlat_matrix{
        FeatureMatrix::build(c->impl, s->impl, cfg, threads)};
    return EQLAT_OK;
  });
}

eqlat_status eqlat_matrix_load(const char* path, eqlat_matrix** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guarded([&] {
    *out = new eqlat_matrix{FeatureMatrix::load(path)};
    return EQLAT_OK;
  });
}

eqlat_status eqlat_matrix_save(const eqlat_matrix* m, const char* path,
                               uint64_t config_hash) {
  if (auto st = require(m && path, "null argument")) return st;
  return guarded([&] {
    m->impl.save(path, config_hash);
    return EQLAT_OK;
  });
}

eqlat_status eqlat_matrix_save_csv(const eqlat_matrix* m, const char* path) {
  if (auto st = require(m && path, "null argument")) return st;
  return guarded([&] {
    m->impl.save_csv(path, "");
    return EQLAT_OK;
  });
}

void eqlat_matrix_free(eqlat_matrix* m) { delete m; }

eqlat_status eqlat_matrix_rows(const eqlat_matrix* m, int64_t* out) {
  if (auto st = require(m && out, "null argument")) return st;
  *out = m->impl.rows();
  return EQLAT_OK;
}

eqlat_status eqlat_matrix_cols(const eqlat_matrix* m, int64_t* out) {
  if (auto st = require(m && out, "null argument")) return st;
  *out = m->impl.cols();
  return EQLAT_OK;
}

eqlat_status eqlat_matrix_value(const eqlat_matrix* m, int64_t row,
                                int64_t col, double* out) {
  if (auto st = require(m && out, "null argument")) return st;
  return guarded([&] {
    *out = m->impl.value(row, col);
    return EQLAT_OK;
  });
}

eqlat_status eqlat_matrix_row_exact(const eqlat_matrix* m, int64_t row,
                                    int* out) {
  if (auto st = require(m && out, "null argument")) return st;
  return guarded([&] {
    *out = m->impl.row_exact(row) ? 1 : 0;
    return EQLAT_OK;
  });
}

eqlat_status eqlat_matrix_expectation_variance(const eqlat_matrix* m,
                                               int64_t row, double* mean,
                                               double* variance) {
  if (auto st = require(m && mean && variance, "null argument")) return st;
  return guarded([&] {
    auto [e, v] = m->impl.expectation_variance(row);
    *mean = e;
    *variance = v;
    return EQLAT_OK;
  });
}

eqlat_status eqlat_matrix_spectrum_json(const eqlat_matrix* m, int64_t row,
                                        char** out) {
  if (auto st = require(m && out, "null argument")) return st;
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [v, mult] : m->impl.spectrum(row).run_length())
      arr.push_back({{"value", v}, {"multiplicity", mult}});
    *out = dup_string(arr.dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_matrix_interference_json(const eqlat_matrix* m,
                                            int64_t row_a, int64_t row_b,
                                            int product_variant, char** out) {
  if (auto st = require(m && out, "null argument")) return st;
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::array();
    if (product_variant) {
      auto ra = m->impl.spectrum(row_a).run_length();
      auto rb = m->impl.spectrum(row_b).run_length();
      for (const auto& [va, ma] : ra)
        for (const auto& [vb, mb] : rb)
          arr.push_back({{"p", va}, {"q", vb}, {"multiplicity", ma * mb}});
    } else {
      for (const auto& [p, q, mult] :
           m->impl.interference(row_a, row_b).run_length())
        arr.push_back({{"p", p}, {"q", q}, {"multiplicity", mult}});
    }
    *out = dup_string(arr.dump(2));
    return EQLAT_OK;
  });
}

/* --- embedding --------------------------------------------------------------- */

eqlat_status eqlat_pca_embed(const eqlat_matrix* m, int k,
                             const eqlat_corpus* corpus,
                             const eqlat_sample* sample, int threads,
                             eqlat_embedding** out) {
  if (auto st = require(m && out, "null argument")) return st;
  return guarded([&] {
    PcaOptions opts;
    opts.k = k;
    opts.threads = threads;
    if (sample && sample->impl.symmetric()) {
      opts.column_involution = sample->impl.opposite_pairing();
      if (corpus) {
        opts.row_involution.resize(size_t(corpus->impl.size()));
        for (int64_t i = 0; i < corpus->impl.size(); ++i)
          opts.row_involution[size_t(i)] =
              int32_t(corpus->impl.conjugate_index(i));
      }
    }
    *out = new eqlat_embedding{pca_embed(m->impl, opts)};
    return EQLAT_OK;
  });
}

void eqlat_embedding_free(eqlat_embedding* e) { delete e; }

eqlat_status eqlat_embedding_rows(const eqlat_embedding* e, int64_t* out) {
  if (auto st = require(e && out, "null argument")) return st;
  *out = e->impl.rows;
  return EQLAT_OK;
}

eqlat_status eqlat_embedding_k(const eqlat_embedding* e, int* out) {
  if (auto st = require(e && out, "null argument")) return st;
  *out = e->impl.k;
  return EQLAT_OK;
}

eqlat_status eqlat_embedding_coord(const eqlat_embedding* e, int64_t row,
                                   int component, double* out) {
  if (auto st = require(e && out, "null argument")) return st;
  return guarded([&]() -> eqlat_status {
    if (row < 0 || row >= e->impl.rows || component < 0 ||
        component >= e->impl.k) {
      set_error("coordinate index out of range");
      return EQLAT_ERR_INVALID_ARGUMENT;
    }
    *out = e->impl.coord(row, component);
    return EQLAT_OK;
  });
}

eqlat_status eqlat_embedding_fix_signs(eqlat_embedding* e,
                                       const eqlat_matrix* m,
                                       const eqlat_corpus* c) {
  if (auto st = require(e && m && c, "null argument")) return st;
  return guarded([&] {
    fix_signs(e->impl, m->impl, c->impl);
    return EQLAT_OK;
  });
}

eqlat_status eqlat_embedding_meta_json(const eqlat_embedding* e,
                                       uint64_t config_hash, char** out) {
  if (auto st = require(e && out, "null argument")) return st;
  return guarded([&] {
    *out = dup_string(embedding_meta_json(e->impl, config_hash).dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_embedding_save_csv(const eqlat_embedding* e,
                                      const char* path) {
  if (auto st = require(e && path, "null argument")) return st;
  return guarded([&] {
    e->impl.save_csv(path, "");
    return EQLAT_OK;
  });
}

eqlat_status eqlat_embedding_load_csv(const char* path, eqlat_embedding** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guarded([&] {
    *out = new eqlat_embedding{LatentEmbedding::load_csv(path)};
    return EQLAT_OK;
  });
}

eqlat_status eqlat_regress(const double* xs, const double* ys, int64_t n,
                           double* slope, double* intercept, double* r2) {
  if (auto st = require(xs && ys && slope && intercept && r2, "null argument"))
    return st;
  return guarded([&] {
    Regression r = regress({xs, size_t(n)}, {ys, size_t(n)});
    *slope = r.slope;
    *intercept = r.intercept;
    *r2 = r.r2;
    return EQLAT_OK;
  });
}

/* --- implication graph -------------------------------------------------------- */

eqlat_status eqlat_graph_load(const char* path, const eqlat_corpus* c,
                              eqlat_graph** out) {
  if (auto st = require(path && c && out, "null argument")) return st;
  return guarded([&] {
    *out = new eqlat_graph{ImplicationGraph::load(path, c->impl), {}};
    return EQLAT_OK;
  });
}

void eqlat_graph_free(eqlat_graph* g) { delete g; }

eqlat_status eqlat_graph_vertices(const eqlat_graph* g, int64_t* out) {
  if (auto st = require(g && out, "null argument")) return st;
  *out = g->impl.vertices();
  return EQLAT_OK;
}

eqlat_status eqlat_graph_total_implications(const eqlat_graph* g,
                                            int64_t* out) {
  if (auto st = require(g && out, "null argument")) return st;
  *out = g->impl.total_implications();
  return EQLAT_OK;
}

eqlat_status eqlat_graph_condense(eqlat_graph* g) {
  if (auto st = require(g != nullptr, "null argument")) return st;
  return guarded([&] {
    g->condensed();
    return EQLAT_OK;
  });
}

eqlat_status eqlat_graph_stats_json(eqlat_graph* g, char** out) {
  if (auto st = require(g && out, "null argument")) return st;
  return guarded([&] {
    *out = dup_string(graph_stats_json(g->impl, g->condensed()).dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_graph_longest_json(eqlat_graph* g, int top, char** out) {
  if (auto st = require(g && out, "null argument")) return st;
  return guarded([&] {
    auto paths = longest_paths(g->condensed(), top);
    *out = dup_string(longest_paths_json(g->condensed(), paths).dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_graph_parallel_json(eqlat_graph* g,
                                       const eqlat_embedding* emb,
                                       double angle_tol, double length_tol,
                                       int64_t max_out, char** out) {
  if (auto st = require(g && emb && out, "null argument")) return st;
  return guarded([&] {
    auto pairs = parallel_edge_candidates(g->condensed(), emb->impl, angle_tol,
                                          length_tol, max_out);
    *out = dup_string(parallel_pairs_json(pairs, g->condensed()).dump(2));
    return EQLAT_OK;
  });
}

/* --- latent geometry ------------------------------------------------------------ */

eqlat_status eqlat_geometry_edge_stats_json(const eqlat_embedding* emb,
                                            eqlat_graph* g,
                                            const char* self_pairs,
                                            char** out) {
  if (auto st = require(emb && g && self_pairs && out, "null argument"))
    return st;
  return guarded([&] {
    EdgeStats s = edge_lengths(emb->impl, g->impl, g->condensed(),
                               parse_self_pairs(self_pairs));
    *out = dup_string(edge_stats_json(s).dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_geometry_cliques_csv(const eqlat_embedding* emb,
                                        eqlat_graph* g, const char* path) {
  if (auto st = require(emb && g && path, "null argument")) return st;
  return guarded([&] {
    CliqueGeometry cg = clique_geometry(emb->impl, g->condensed());
    write_cliques_csv(path, cg, g->condensed(), "");
    return EQLAT_OK;
  });
}

eqlat_status eqlat_geometry_cross_clique_csv(eqlat_graph* g,
                                             const char* path) {
  if (auto st = require(g && path, "null argument")) return st;
  return guarded([&] {
    CrossCliqueMatrix m = cross_clique_edge_matrix(g->impl, g->condensed());
    write_cross_clique_csv(path, m, "");
    return EQLAT_OK;
  });
}

eqlat_status eqlat_geometry_scene_csv(const eqlat_embedding* emb,
                                      eqlat_graph* g, const char* path) {
  if (auto st = require(emb && g && path, "null argument")) return st;
  return guarded([&] {
    CliqueGeometry cg = clique_geometry(emb->impl, g->condensed());
    write_scene_csv(path, cg, g->condensed(), "");
    return EQLAT_OK;
  });
}

/* --- entailment proofs ----------------------------------------------------------- */

eqlat_status eqlat_proof_parse(const char* text, eqlat_proof** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guarded([&] {
    *out = new eqlat_proof{HerbrandProof::parse(text)};
    return EQLAT_OK;
  });
}

eqlat_status eqlat_proof_load(const char* path, eqlat_proof** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guarded([&] {
    *out = new eqlat_proof{HerbrandProof::load(path)};
    return EQLAT_OK;
  });
}

void eqlat_proof_free(eqlat_proof* p) { delete p; }

eqlat_status eqlat_proof_verify_json(eqlat_proof* p, int depth, int size_cap,
                                     int* proved, char** out) {
  if (auto st = require(p && proved && out, "null argument")) return st;
  return guarded([&] {
    ProofLimits limits = p->impl.limits();
    if (depth > 0) limits.depth = depth;
    if (size_cap > 0) limits.term_size_cap = size_cap;
    p->impl.set_limits(limits);
    VerifyResult r = verify(p->impl);
    *proved = r.proved ? 1 : 0;
    *out = dup_string(verify_result_json(p->impl, r).dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_proof_check_semantically_json(const eqlat_proof* p,
                                                 const eqlat_sample* s,
                                                 int* consistent, char** out) {
  if (auto st = require(p && s && consistent && out, "null argument"))
    return st;
  return guarded([&] {
    SemanticCheck c = verify_semantically(p->impl, s->impl);
    *consistent = c.consistent ? 1 : 0;
    *out = dup_string(semantic_check_json(c).dump(2));
    return EQLAT_OK;
  });
}

/* --- pipeline ---------------------------------------------------------------------- */

eqlat_status eqlat_pipeline_run(const char* config_text, int threads,
                                char** report_json) {
  if (auto st = require(config_text && report_json, "null argument"))
    return st;
  return guarded([&] {
    PipelineConfig cfg = PipelineConfig::parse_text(config_text);
    *report_json = dup_string(run_pipeline(cfg, threads).dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_pipeline_run_file(const char* config_path, int threads,
                                     char** report_json) {
  if (auto st = require(config_path && report_json, "null argument"))
    return st;
  return guarded([&] {
    PipelineConfig cfg = PipelineConfig::parse_file(config_path);
    *report_json = dup_string(run_pipeline(cfg, threads).dump(2));
    return EQLAT_OK;
  });
}

eqlat_status eqlat_plot_emit(const char* config_path, const char* kind,
                             const char* args_json, int threads,
                             char** files_json) {
  if (auto st = require(config_path && kind && files_json, "null argument"))
    return st;
  return guarded([&] {
    PipelineConfig cfg = PipelineConfig::parse_file(config_path);
    nlohmann::json args = nlohmann::json::object();
    if (args_json && *args_json) args = nlohmann::json::parse(args_json);
    auto files = emit_plot_data(cfg, kind, args, threads);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : files) arr.push_back(f);
    *files_json = dup_string(arr.dump(2));
    return EQLAT_OK;
  });
}

}  // extern "C"
