#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqlat/corpus.hpp"
#include "eqlat/geometry.hpp"
#include "eqlat/graph.hpp"
#include "eqlat/herbrand.hpp"
#include "eqlat/magma.hpp"
#include "eqlat/pca.hpp"
#include "eqlat/stone.hpp"

namespace eqlat {

// Everything a full run needs, parsed from a flat "key = value" file.
// Unknown keys are rejected. The worker-thread count is intentionally not
// part of the config: outputs must not depend on it.
struct PipelineConfig {
  int max_ops = 4;

  int64_t sample_n = 1000;
  int sample_size = 8;  // N
  uint64_t sample_seed = 1;
  bool sample_symmetric = true;

  StoneConfig stone;
  bool stone_csv = false;

  int pca_k = 3;

  std::string graph_path;  // empty: graph/geometry stages are skipped
  SelfPairs self_pairs = SelfPairs::kInclude;

  std::string out_dir = "out";
  std::vector<std::string> stages;  // empty: every applicable stage

  static PipelineConfig parse_text(const std::string& text);
  static PipelineConfig parse_file(const std::string& path);

  // Normalized serialization; two configs are equivalent iff these agree.
  std::string canonical_text() const;

  // Hash of the config subset one stage depends on (plus tool version), so
  // unrelated edits do not invalidate cached artifacts.
  uint64_t stage_hash(const std::string& stage) const;

  // Artifact paths inside out_dir.
  std::string corpus_path() const { return out_dir + "/corpus.txt"; }
  std::string sample_path() const { return out_dir + "/sample.txt"; }
  std::string matrix_path() const { return out_dir + "/matrix.bin"; }
  std::string matrix_csv_path() const { return out_dir + "/matrix.csv"; }
  std::string embedding_path() const { return out_dir + "/embedding.csv"; }
  std::string pca_meta_path() const { return out_dir + "/pca_meta.json"; }
  std::string graph_stats_path() const { return out_dir + "/graph_stats.json"; }
  std::string edge_stats_path() const { return out_dir + "/edge_stats.csv"; }
  std::string cliques_path() const { return out_dir + "/cliques.csv"; }
  std::string cross_clique_path() const { return out_dir + "/cross_clique.csv"; }
  std::string scene_path() const { return out_dir + "/scene.csv"; }
  std::string report_path() const { return out_dir + "/report.json"; }
};

// Runs the selected stages in dependency order, reusing cached artifacts
// whose embedded config hash matches, and writes report.json. Cache events
// are logged to stderr so the report stays byte-reproducible.
nlohmann::json run_pipeline(const PipelineConfig& config, int threads);

// Writes figure-ready CSV data under out_dir/plots. `kind` is one of
// spectrum | interference | scene | regression | scree. args:
//   spectrum:     {"eq": index, "bins": optional}
//   interference: {"eq": index, "eq2": index, "product": optional bool}
// Returns the written paths.
std::vector<std::string> emit_plot_data(const PipelineConfig& config,
                                        const std::string& kind,
                                        const nlohmann::json& args,
                                        int threads);

// JSON views shared by the pipeline, the C API and the CLI.
nlohmann::json corpus_stats_json(const Corpus& c);
nlohmann::json graph_stats_json(const ImplicationGraph& g,
                                const Condensation& c);
nlohmann::json longest_paths_json(const Condensation& c,
                                  const std::vector<std::vector<int32_t>>& paths);
nlohmann::json parallel_pairs_json(const std::vector<ParallelEdgePair>& pairs,
                                   const Condensation& c);
nlohmann::json edge_stats_json(const EdgeStats& s);
nlohmann::json verify_result_json(const HerbrandProof& p,
                                  const VerifyResult& r);
nlohmann::json semantic_check_json(const SemanticCheck& s);
nlohmann::json embedding_meta_json(const LatentEmbedding& emb,
                                   uint64_t config_hash);

}  // namespace eqlat
