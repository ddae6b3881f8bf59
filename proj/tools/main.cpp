// eqlat command line: every subcommand goes through the C API in eqlat.h.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqlat.h"

namespace {

// exit codes: 0 ok, 1 usage, 2 data error, 3 verification failure
int exit_code_for(eqlat_status st) {
  switch (st) {
    case EQLAT_OK:
      return 0;
    case EQLAT_ERR_INVALID_ARGUMENT:
      return 1;
    default:
      return 2;
  }
}

int fail(eqlat_status st) {
  std::fprintf(stderr, "eqlat: %s\n", eqlat_last_error());
  return exit_code_for(st);
}

struct StringOut {
  char* ptr = nullptr;
  ~StringOut() { eqlat_string_free(ptr); }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using CorpusHandle = Handle<eqlat_corpus, eqlat_corpus_free>;
using SampleHandle = Handle<eqlat_sample, eqlat_sample_free>;
using MatrixHandle = Handle<eqlat_matrix, eqlat_matrix_free>;
using EmbeddingHandle = Handle<eqlat_embedding, eqlat_embedding_free>;
using GraphHandle = Handle<eqlat_graph, eqlat_graph_free>;
using ProofHandle = Handle<eqlat_proof, eqlat_proof_free>;

// The corpus argument shared by several subcommands: either a saved corpus
// file or a fresh enumeration at the given budget.
struct CorpusArgs {
  std::string path;
  int max_ops = 4;
  std::string numbering;

  void attach(CLI::App* cmd) {
    cmd->add_option("--corpus", path, "corpus file (otherwise enumerated)");
    cmd->add_option("--max-ops", max_ops, "enumeration budget when no file")
        ->check(CLI::Range(0, 6));
    cmd->add_option("--numbering", numbering,
                    "external numbering sidecar (equation <-> number)");
  }

  eqlat_status build(CorpusHandle& out) const {
    eqlat_status st = path.empty()
                          ? eqlat_corpus_enumerate(max_ops, out.out())
                          : eqlat_corpus_load(path.c_str(), out.out());
    if (st != EQLAT_OK) return st;
    if (!numbering.empty())
      st = eqlat_corpus_load_numbering(out.get(), numbering.c_str());
    return st;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latent-space analytics for finite-magma equational laws"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker cap (default: hardware)");

  // --- corpus ---------------------------------------------------------------
  auto* cmd_corpus = app.add_subcommand("corpus", "enumerate the law corpus");
  int corpus_max_ops = 4;
  std::string corpus_out, corpus_numbering;
  cmd_corpus->add_option("--max-ops", corpus_max_ops)->check(CLI::Range(0, 6));
  cmd_corpus->add_option("-o,--out", corpus_out, "write corpus file");
  cmd_corpus->add_option("--numbering", corpus_numbering,
                         "check an external numbering sidecar");
  cmd_corpus->callback([&] {
    CorpusHandle c;
    eqlat_status st = eqlat_corpus_enumerate(corpus_max_ops, c.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    if (!corpus_numbering.empty()) {
      st = eqlat_corpus_load_numbering(c.get(), corpus_numbering.c_str());
      if (st != EQLAT_OK) std::exit(fail(st));
    }
    if (!corpus_out.empty()) {
      st = eqlat_corpus_save(c.get(), corpus_out.c_str());
      if (st != EQLAT_OK) std::exit(fail(st));
    }
    StringOut json;
    st = eqlat_corpus_stats_json(c.get(), &json.ptr);
    if (st != EQLAT_OK) std::exit(fail(st));
    std::printf("%s\n", json.ptr);
  });

  // --- sample ---------------------------------------------------------------
  auto* cmd_sample = app.add_subcommand("sample", "draw a seeded magma sample");
  int64_t sample_n = 1000;
  int sample_size = 8;
  uint64_t sample_seed = 1;
  bool sample_symmetric = false;
  std::string sample_out;
  cmd_sample->add_option("-n,--count", sample_n, "number of magmas");
  cmd_sample->add_option("-N,--size", sample_size, "magma size")
      ->check(CLI::Range(1, 16));
  cmd_sample->add_option("--seed", sample_seed);
  cmd_sample->add_flag("--symmetric", sample_symmetric,
                       "close the sample under the opposite construction");
  cmd_sample->add_option("-o,--out", sample_out)->required();
  cmd_sample->callback([&] {
    SampleHandle s;
    eqlat_status st = eqlat_sample_generate(
        sample_n, sample_size, sample_seed, sample_symmetric ? 1 : 0, s.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    st = eqlat_sample_save(s.get(), sample_out.c_str());
    if (st != EQLAT_OK) std::exit(fail(st));
    std::printf("wrote %s\n", sample_out.c_str());
  });

  // --- stone ----------------------------------------------------------------
  auto* cmd_stone =
      app.add_subcommand("stone", "build the pairing feature matrix");
  CorpusArgs stone_corpus;
  stone_corpus.attach(cmd_stone);
  std::string stone_sample, stone_out, stone_csv, stone_mode = "auto";
  uint64_t stone_budget = 0, stone_mc_seed = 0;
  int64_t stone_mc_samples = 0;
  cmd_stone->add_option("--sample", stone_sample)->required();
  cmd_stone->add_option("-o,--out", stone_out)->required();
  cmd_stone->add_option("--csv", stone_csv, "also export CSV");
  cmd_stone->add_option("--mode", stone_mode)
      ->check(CLI::IsMember({"auto", "exact", "mc"}));
  cmd_stone->add_option("--exact-budget", stone_budget);
  cmd_stone->add_option("--mc-samples", stone_mc_samples);
  cmd_stone->add_option("--mc-seed", stone_mc_seed);
  cmd_stone->callback([&] {
    CorpusHandle c;
    eqlat_status st = stone_corpus.build(c);
    if (st != EQLAT_OK) std::exit(fail(st));
    SampleHandle s;
    st = eqlat_sample_load(stone_sample.c_str(), s.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    MatrixHandle m;
    st = eqlat_matrix_build(c.get(), s.get(), stone_mode.c_str(), stone_budget,
                            stone_mc_samples, stone_mc_seed, 1, threads,
                            m.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    st = eqlat_matrix_save(m.get(), stone_out.c_str(), 0);
    if (st != EQLAT_OK) std::exit(fail(st));
    if (!stone_csv.empty()) {
      st = eqlat_matrix_save_csv(m.get(), stone_csv.c_str());
      if (st != EQLAT_OK) std::exit(fail(st));
    }
    int64_t rows = 0, cols = 0;
    eqlat_matrix_rows(m.get(), &rows);
    eqlat_matrix_cols(m.get(), &cols);
    std::printf("wrote %s (%lld x %lld)\n", stone_out.c_str(),
                (long long)rows, (long long)cols);
  });

  // --- pca ------------------------------------------------------------------
  auto* cmd_pca = app.add_subcommand("pca", "embed equations in latent space");
  CorpusArgs pca_corpus;
  pca_corpus.attach(cmd_pca);
  std::string pca_matrix, pca_sample, pca_out, pca_meta;
  int pca_k = 3;
  bool pca_no_fix = false;
  cmd_pca->add_option("--matrix", pca_matrix)->required();
  cmd_pca->add_option("--sample", pca_sample,
                      "sample file (enables symmetry stabilization)");
  cmd_pca->add_option("-k", pca_k)->check(CLI::Range(1, 10));
  cmd_pca->add_option("-o,--out", pca_out)->required();
  cmd_pca->add_option("--meta", pca_meta, "write metadata JSON");
  cmd_pca->add_flag("--no-fix-signs", pca_no_fix);
  cmd_pca->callback([&] {
    MatrixHandle m;
    eqlat_status st = eqlat_matrix_load(pca_matrix.c_str(), m.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    CorpusHandle c;
    st = pca_corpus.build(c);
    if (st != EQLAT_OK) std::exit(fail(st));
    SampleHandle s;
    if (!pca_sample.empty()) {
      st = eqlat_sample_load(pca_sample.c_str(), s.out());
      if (st != EQLAT_OK) std::exit(fail(st));
    }
    EmbeddingHandle e;
    st = eqlat_pca_embed(m.get(), pca_k, c.get(), s.get(), threads, e.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    if (!pca_no_fix) {
      st = eqlat_embedding_fix_signs(e.get(), m.get(), c.get());
      if (st != EQLAT_OK) std::exit(fail(st));
    }
    st = eqlat_embedding_save_csv(e.get(), pca_out.c_str());
    if (st != EQLAT_OK) std::exit(fail(st));
    StringOut meta;
    st = eqlat_embedding_meta_json(e.get(), 0, &meta.ptr);
    if (st != EQLAT_OK) std::exit(fail(st));
    if (!pca_meta.empty()) {
      FILE* f = std::fopen(pca_meta.c_str(), "w");
      if (!f) {
        std::fprintf(stderr, "eqlat: cannot write %s\n", pca_meta.c_str());
        std::exit(2);
      }
      std::fprintf(f, "%s\n", meta.ptr);
      std::fclose(f);
    } else {
      std::printf("%s\n", meta.ptr);
    }
  });

  // --- graph ------------------------------------------------------------------
  auto* cmd_graph = app.add_subcommand("graph", "implication preorder analytics");
  cmd_graph->require_subcommand(1);
  CorpusArgs graph_corpus;
  std::string graph_file;
  auto attach_graph_common = [&](CLI::App* sub) {
    sub->add_option("--file", graph_file, "preorder edge list")->required();
    graph_corpus.attach(sub);
  };
  auto load_graph = [&](CorpusHandle& c, GraphHandle& g) {
    eqlat_status st = graph_corpus.build(c);
    if (st != EQLAT_OK) std::exit(fail(st));
    st = eqlat_graph_load(graph_file.c_str(), c.get(), g.out());
    if (st != EQLAT_OK) std::exit(fail(st));
  };

  auto* cmd_graph_load =
      cmd_graph->add_subcommand("load", "ingest and validate");
  attach_graph_common(cmd_graph_load);
  cmd_graph_load->callback([&] {
    CorpusHandle c;
    GraphHandle g;
    load_graph(c, g);
    int64_t v = 0, total = 0;
    eqlat_graph_vertices(g.get(), &v);
    eqlat_graph_total_implications(g.get(), &total);
    std::printf("{\n  \"vertices\": %lld,\n  \"implications_total\": %lld\n}\n",
                (long long)v, (long long)total);
  });

  auto add_stats_like = [&](const char* name, const char* help) {
    auto* sub = cmd_graph->add_subcommand(name, help);
    attach_graph_common(sub);
    sub->callback([&] {
      CorpusHandle c;
      GraphHandle g;
      load_graph(c, g);
      StringOut json;
      eqlat_status st = eqlat_graph_stats_json(g.get(), &json.ptr);
      if (st != EQLAT_OK) std::exit(fail(st));
      std::printf("%s\n", json.ptr);
    });
    return sub;
  };
  add_stats_like("condense", "cliques, order, reduction");
  add_stats_like("stats", "full count report");

  auto* cmd_graph_longest = cmd_graph->add_subcommand(
      "longest", "maximal paths in the reduced graph");
  attach_graph_common(cmd_graph_longest);
  int longest_top = 10;
  cmd_graph_longest->add_option("--top", longest_top);
  cmd_graph_longest->callback([&] {
    CorpusHandle c;
    GraphHandle g;
    load_graph(c, g);
    StringOut json;
    eqlat_status st = eqlat_graph_longest_json(g.get(), longest_top, &json.ptr);
    if (st != EQLAT_OK) std::exit(fail(st));
    std::printf("%s\n", json.ptr);
  });

  auto* cmd_graph_parallel = cmd_graph->add_subcommand(
      "parallel", "near-parallel reduced edges in latent space");
  attach_graph_common(cmd_graph_parallel);
  std::string parallel_embedding;
  double angle_tol = 0.05, length_tol = 0.1;
  int64_t parallel_top = 100;
  cmd_graph_parallel->add_option("--embedding", parallel_embedding)->required();
  cmd_graph_parallel->add_option("--angle-tol", angle_tol, "radians");
  cmd_graph_parallel->add_option("--length-tol", length_tol, "relative");
  cmd_graph_parallel->add_option("--top", parallel_top);
  cmd_graph_parallel->callback([&] {
    CorpusHandle c;
    GraphHandle g;
    load_graph(c, g);
    EmbeddingHandle e;
    eqlat_status st =
        eqlat_embedding_load_csv(parallel_embedding.c_str(), e.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    StringOut json;
    st = eqlat_graph_parallel_json(g.get(), e.get(), angle_tol, length_tol,
                                   parallel_top, &json.ptr);
    if (st != EQLAT_OK) std::exit(fail(st));
    std::printf("%s\n", json.ptr);
  });

  // --- geometry ------------------------------------------------------------------
  auto* cmd_geometry =
      app.add_subcommand("geometry", "edge lengths, cliques, scene export");
  CorpusArgs geo_corpus;
  std::string geo_file, geo_embedding, geo_outdir = ".", geo_self = "include";
  cmd_geometry->add_option("--file", geo_file, "preorder edge list")->required();
  geo_corpus.attach(cmd_geometry);
  cmd_geometry->add_option("--embedding", geo_embedding)->required();
  cmd_geometry->add_option("--out-dir", geo_outdir);
  cmd_geometry->add_option("--self-pairs", geo_self)
      ->check(CLI::IsMember({"include", "exclude"}));
  cmd_geometry->callback([&] {
    CorpusHandle c;
    eqlat_status st = geo_corpus.build(c);
    if (st != EQLAT_OK) std::exit(fail(st));
    GraphHandle g;
    st = eqlat_graph_load(geo_file.c_str(), c.get(), g.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    EmbeddingHandle e;
    st = eqlat_embedding_load_csv(geo_embedding.c_str(), e.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    StringOut json;
    st = eqlat_geometry_edge_stats_json(e.get(), g.get(), geo_self.c_str(),
                                        &json.ptr);
    if (st != EQLAT_OK) std::exit(fail(st));
    std::string base = geo_outdir + "/";
    st = eqlat_geometry_cliques_csv(e.get(), g.get(),
                                    (base + "cliques.csv").c_str());
    if (st != EQLAT_OK) std::exit(fail(st));
    st = eqlat_geometry_cross_clique_csv(g.get(),
                                         (base + "cross_clique.csv").c_str());
    if (st != EQLAT_OK) std::exit(fail(st));
    st = eqlat_geometry_scene_csv(e.get(), g.get(),
                                  (base + "scene.csv").c_str());
    if (st != EQLAT_OK) std::exit(fail(st));
    std::printf("%s\n", json.ptr);
  });

  // --- herbrand ---------------------------------------------------------------
  auto* cmd_herbrand = app.add_subcommand("herbrand", "entailment proofs");
  auto* cmd_verify = cmd_herbrand->add_subcommand(
      "verify", "check a substitution proof by bounded rewriting");
  std::string proof_path, semantic_sample;
  int verify_depth = 0, verify_size = 0;
  cmd_verify->add_option("proof", proof_path, "proof file")->required();
  cmd_verify->add_option("--depth", verify_depth);
  cmd_verify->add_option("--size-cap", verify_size);
  cmd_verify->add_option("--semantic-sample", semantic_sample,
                         "also scan a magma sample for counterexamples");
  cmd_verify->callback([&] {
    ProofHandle p;
    eqlat_status st = eqlat_proof_load(proof_path.c_str(), p.out());
    if (st != EQLAT_OK) std::exit(fail(st));
    int proved = 0;
    StringOut json;
    st = eqlat_proof_verify_json(p.get(), verify_depth, verify_size, &proved,
                                 &json.ptr);
    if (st != EQLAT_OK) std::exit(fail(st));
    std::printf("%s\n", json.ptr);
    if (!semantic_sample.empty()) {
      SampleHandle s;
      st = eqlat_sample_load(semantic_sample.c_str(), s.out());
      if (st != EQLAT_OK) std::exit(fail(st));
      int consistent = 0;
      StringOut sem;
      st = eqlat_proof_check_semantically_json(p.get(), s.get(), &consistent,
                                               &sem.ptr);
      if (st != EQLAT_OK) std::exit(fail(st));
      std::printf("%s\n", sem.ptr);
      if (!consistent) std::exit(3);
    }
    if (!proved) std::exit(3);
  });

  // --- pipeline ----------------------------------------------------------------
  auto* cmd_pipeline = app.add_subcommand("pipeline", "staged full runs");
  auto* cmd_run = cmd_pipeline->add_subcommand("run", "run configured stages");
  std::string config_path;
  cmd_run->add_option("--config", config_path)->required();
  cmd_run->callback([&] {
    StringOut report;
    eqlat_status st =
        eqlat_pipeline_run_file(config_path.c_str(), threads, &report.ptr);
    if (st != EQLAT_OK) std::exit(fail(st));
    std::printf("%s\n", report.ptr);
  });

  // --- plot ---------------------------------------------------------------------
  auto* cmd_plot = app.add_subcommand("plot", "emit figure-ready CSV data");
  std::string plot_config, plot_kind;
  int64_t plot_eq = -1, plot_eq2 = -1;
  int plot_bins = 0;
  bool plot_product = false;
  cmd_plot->add_option("--config", plot_config)->required();
  cmd_plot->add_option("--kind", plot_kind)
      ->required()
      ->check(CLI::IsMember(
          {"spectrum", "interference", "scene", "regression", "scree"}));
  cmd_plot->add_option("--eq", plot_eq);
  cmd_plot->add_option("--eq2", plot_eq2);
  cmd_plot->add_option("--bins", plot_bins);
  cmd_plot->add_flag("--product", plot_product,
                     "all-cross-pairs interference variant");
  cmd_plot->callback([&] {
    std::string args = "{";
    bool first = true;
    auto add = [&](const std::string& k, const std::string& v) {
      if (!first) args += ",";
      args += "\"" + k + "\":" + v;
      first = false;
    };
    if (plot_eq >= 0) add("eq", std::to_string(plot_eq));
    if (plot_eq2 >= 0) add("eq2", std::to_string(plot_eq2));
    if (plot_bins > 0) add("bins", std::to_string(plot_bins));
    if (plot_product) add("product", "true");
    args += "}";
    StringOut files;
    eqlat_status st = eqlat_plot_emit(plot_config.c_str(), plot_kind.c_str(),
                                      args.c_str(), threads, &files.ptr);
    if (st != EQLAT_OK) std::exit(fail(st));
    std::printf("%s\n", files.ptr);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
