#include "eqlat/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eqlat/error.hpp"
#include "eqlat/util.hpp"
#include "eqlat/version.hpp"

namespace eqlat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, size_t lineno) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("expected a boolean, got '" + v + "'", lineno, true);
}

std::string hex16(uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)v);
  return buf;
}

}  // namespace

PipelineConfig PipelineConfig::parse_text(const std::string& text) {
  PipelineConfig c;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno, true);
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    try {
      if (key == "max_ops")
        c.max_ops = std::stoi(value);
      else if (key == "sample.n")
        c.sample_n = std::stoll(value);
      else if (key == "sample.size")
        c.sample_size = std::stoi(value);
      else if (key == "sample.seed")
        c.sample_seed = std::stoull(value);
      else if (key == "sample.symmetric")
        c.sample_symmetric = parse_bool(value, lineno);
      else if (key == "stone.mode")
        c.stone.mode = StoneConfig::parse_mode(value);
      else if (key == "stone.exact_budget")
        c.stone.exact_budget = std::stoull(value);
      else if (key == "stone.mc_samples")
        c.stone.mc_samples = std::stoll(value);
      else if (key == "stone.mc_seed")
        c.stone.mc_seed = std::stoull(value);
      else if (key == "stone.fractions")
        c.stone.store_fractions = parse_bool(value, lineno);
      else if (key == "stone.csv")
        c.stone_csv = parse_bool(value, lineno);
      else if (key == "pca.k")
        c.pca_k = std::stoi(value);
      else if (key == "graph.path")
        c.graph_path = value;
      else if (key == "graph.self_pairs")
        c.self_pairs = parse_self_pairs(value);
      else if (key == "out_dir")
        c.out_dir = value;
      else if (key == "stages") {
        c.stages.clear();
        std::istringstream items(value);
        std::string item;
        while (std::getline(items, item, ','))
          if (!trim(item).empty()) c.stages.push_back(trim(item));
      } else {
        throw ParseError("unknown config key '" + key + "'", lineno, true);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), lineno, true);
    } catch (...) {
      throw ParseError("bad value for '" + key + "'", lineno, true);
    }
  }
  if (c.max_ops < 0 || c.max_ops > 6)
    throw InvalidArgument("max_ops must be in [0, 6]");
  if (c.sample_n < 1) throw InvalidArgument("sample.n must be >= 1");
  if (c.sample_size < 1 || c.sample_size > 16)
    throw InvalidArgument("sample.size must be in [1, 16]");
  if (c.sample_symmetric && c.sample_n % 2 != 0)
    throw InvalidArgument("a symmetric sample needs an even sample.n");
  if (c.pca_k < 1 || c.pca_k > 10)
    throw InvalidArgument("pca.k must be in [1, 10]");
  return c;
}

PipelineConfig PipelineConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::string PipelineConfig::canonical_text() const {
  std::ostringstream out;
  out << "max_ops = " << max_ops << "\n";
  out << "sample.n = " << sample_n << "\n";
  out << "sample.size = " << sample_size << "\n";
  out << "sample.seed = " << sample_seed << "\n";
  out << "sample.symmetric = " << (sample_symmetric ? "true" : "false") << "\n";
  out << "stone.mode = " << StoneConfig::mode_name(stone.mode) << "\n";
  out << "stone.exact_budget = " << stone.exact_budget << "\n";
  out << "stone.mc_samples = " << stone.mc_samples << "\n";
  out << "stone.mc_seed = " << stone.mc_seed << "\n";
  out << "stone.fractions = " << (stone.store_fractions ? "true" : "false")
      << "\n";
  out << "stone.csv = " << (stone_csv ? "true" : "false") << "\n";
  out << "pca.k = " << pca_k << "\n";
  out << "graph.path = " << graph_path << "\n";
  out << "graph.self_pairs = " << self_pairs_name(self_pairs) << "\n";
  out << "out_dir = " << out_dir << "\n";
  out << "stages = ";
  for (size_t i = 0; i < stages.size(); ++i) {
    if (i) out << ',';
    out << stages[i];
  }
  out << "\n";
  return out.str();
}

uint64_t PipelineConfig::stage_hash(const std::string& stage) const {
  std::ostringstream key;
  key << kVersion << "|" << stage << "|";
  auto corpus_part = [&] { key << "max_ops=" << max_ops << ";"; };
  auto sample_part = [&] {
    key << "n=" << sample_n << ";N=" << sample_size << ";seed=" << sample_seed
        << ";sym=" << sample_symmetric << ";";
  };
  auto stone_part = [&] {
    corpus_part();
    sample_part();
    key << "mode=" << StoneConfig::mode_name(stone.mode)
        << ";budget=" << stone.exact_budget << ";mc=" << stone.mc_samples
        << ";mcseed=" << stone.mc_seed << ";frac=" << stone.store_fractions
        << ";";
  };
  auto graph_part = [&] {
    corpus_part();
    key << "graph=";
    if (!graph_path.empty()) {
      std::ifstream in(graph_path, std::ios::binary);
      if (in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        key << hex16(fnv1a64(buf.str()));
      } else {
        key << "missing";
      }
    }
    key << ";self=" << self_pairs_name(self_pairs) << ";";
  };
  if (stage == "corpus") {
    corpus_part();
  } else if (stage == "sample") {
    sample_part();
  } else if (stage == "stone") {
    stone_part();
  } else if (stage == "pca") {
    stone_part();
    key << "k=" << pca_k << ";";
  } else if (stage == "graph") {
    graph_part();
  } else if (stage == "geometry") {
    stone_part();
    key << "k=" << pca_k << ";";
    graph_part();
  } else {
    throw InvalidArgument("unknown stage: " + stage);
  }
  return fnv1a64(key.str());
}

// --- JSON views ---------------------------------------------------------------

json corpus_stats_json(const Corpus& c) {
  json hist = json::object();
  for (const auto& [sig, count] : c.signature_histogram())
    hist["(" + std::to_string(sig.first) + "," + std::to_string(sig.second) +
         ")"] = count;
  return json{{"count", c.size()},
              {"max_ops", c.max_ops()},
              {"signature_histogram", hist},
              {"self_conjugate", c.self_conjugate_count()}};
}

json graph_stats_json(const ImplicationGraph& g, const Condensation& c) {
  json hist = json::object();
  for (const auto& [size, count] : c.clique_size_histogram())
    hist[std::to_string(size)] = count;
  return json{
      {"vertices", g.vertices()},
      {"implications_total", c.total_implications},
      {"strict", c.strict_count},
      {"reversible_including_self", c.reversible_count_incl_self},
      {"reversible_excluding_self", c.reversible_count_excl_self},
      {"cliques", c.num_cliques()},
      {"clique_order_edges", c.clique_order_edge_count()},
      {"atomic_clique_edges", c.atomic_clique_edge_count()},
      {"vertex_atomic_steps", c.vertex_atomic_count()},
      {"clique_size_histogram", hist},
  };
}

json longest_paths_json(const Condensation& c,
                        const std::vector<std::vector<int32_t>>& paths) {
  json out = json::array();
  for (const auto& p : paths) {
    json cliques = json::array();
    json reps = json::array();
    for (int32_t q : p) {
      cliques.push_back(q);
      reps.push_back(c.members[size_t(q)].front());
    }
    out.push_back(json{{"length", p.size() - 1},
                       {"cliques", cliques},
                       {"representatives", reps}});
  }
  return json{{"paths", out}};
}

json parallel_pairs_json(const std::vector<ParallelEdgePair>& pairs,
                         const Condensation& c) {
  json out = json::array();
  auto rep = [&](int32_t q) { return c.members[size_t(q)].front(); };
  for (const auto& p : pairs) {
    out.push_back(json{{"edge_a", {rep(p.src_a), rep(p.dst_a)}},
                       {"edge_b", {rep(p.src_b), rep(p.dst_b)}},
                       {"cliques_a", {p.src_a, p.dst_a}},
                       {"cliques_b", {p.src_b, p.dst_b}},
                       {"angle", p.angle},
                       {"length_a", p.length_a},
                       {"length_b", p.length_b},
                       {"score", p.score}});
  }
  return json{{"pairs", out}};
}

json edge_stats_json(const EdgeStats& s) {
  auto cls = [](const ClassStats& c) {
    return json{{"count", c.count}, {"mean", c.mean},   {"std", c.stddev},
                {"min", c.min},     {"q25", c.q25},     {"q50", c.q50},
                {"q75", c.q75},     {"max", c.max}};
  };
  return json{{"self_pairs", self_pairs_name(s.convention)},
              {"reversible", cls(s.reversible)},
              {"atomic", cls(s.atomic)},
              {"strict", cls(s.strict)}};
}

json verify_result_json(const HerbrandProof& p, const VerifyResult& r) {
  json steps = json::array();
  for (const auto& s : r.trace) {
    json bindings = json::object();
    for (const auto& [v, t] : s.bindings)
      bindings[var_name(v)] = print_term(t);
    steps.push_back(json{{"before", print_term(s.before)},
                         {"after", print_term(s.after)},
                         {"rule", s.rule},
                         {"direction", s.left_to_right ? "lr" : "rl"},
                         {"position", s.position},
                         {"bindings", bindings}});
  }
  json instances = json::array();
  for (const auto& [l, rr] : p.instances())
    instances.push_back(print_term(l) + " = " + print_term(rr));
  return json{
      {"verdict", r.proved ? "proved" : "not-found-within-bounds"},
      {"source", print_term(p.source().lhs) + " = " + print_term(p.source().rhs)},
      {"target", print_term(p.target().lhs) + " = " + print_term(p.target().rhs)},
      {"instances", instances},
      {"trace", steps},
      {"expanded", r.expanded},
      {"message", r.message}};
}

json semantic_check_json(const SemanticCheck& s) {
  json out{{"verdict", s.consistent ? "consistent" : "counterexample"}};
  if (!s.consistent) out["counterexample_index"] = s.counterexample;
  return out;
}

json embedding_meta_json(const LatentEmbedding& emb, uint64_t config_hash) {
  return json{{"version", kVersion},
              {"config", hex16(config_hash)},
              {"k", emb.k},
              {"rows", emb.rows},
              {"singular_values", emb.singular_values},
              {"explained_variance_ratio", emb.explained_variance_ratio},
              {"center", emb.center}};
}

// --- pipeline ------------------------------------------------------------------

namespace {

// Scans the leading comment lines of a text artifact for "config=<hex>".
std::optional<uint64_t> artifact_config_hash(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') break;
    size_t pos = line.find("config=");
    if (pos != std::string::npos) {
      std::string hex = line.substr(pos + 7, 16);
      try {
        return std::stoull(hex, nullptr, 16);
      } catch (...) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

std::optional<uint64_t> json_config_hash(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    if (!j.contains("config")) return std::nullopt;
    return std::stoull(j["config"].get<std::string>(), nullptr, 16);
  } catch (...) {
    return std::nullopt;
  }
}

struct Pipeline {
  const PipelineConfig& cfg;
  int threads;
  std::optional<Corpus> corpus;
  std::optional<MagmaSample> sample;
  std::optional<FeatureMatrix> matrix;
  std::optional<LatentEmbedding> embedding;
  std::optional<ImplicationGraph> graph;
  std::optional<Condensation> cond;

  Pipeline(const PipelineConfig& c, int t) : cfg(c), threads(t) {}

  bool selected(const std::string& stage, bool dflt) const {
    if (cfg.stages.empty()) return dflt;
    for (const auto& s : cfg.stages)
      if (s == stage) return true;
    return false;
  }

  // Reuse when the artifact exists and carries the expected hash. Returns
  // false (after a stderr note) when it exists but is stale.
  bool cache_ok(const std::string& path, uint64_t expected, bool binary_matrix,
                bool is_json) {
    if (!fs::exists(path)) return false;
    std::optional<uint64_t> found;
    if (binary_matrix) {
      try {
        uint64_t h;
        FeatureMatrix::load(path, &h);
        found = h;
      } catch (...) {
        found = std::nullopt;
      }
    } else if (is_json) {
      found = json_config_hash(path);
    } else {
      found = artifact_config_hash(path);
    }
    if (found && *found == expected) return true;
    std::cerr << "eqlat: stale cache, recomputing " << path << "\n";
    return false;
  }

  std::string header_for(const std::string& stage) const {
    return "config=" + hex16(cfg.stage_hash(stage)) + " version=" + kVersion;
  }

  // --- dependency loading -------------------------------------------------

  const Corpus& need_corpus() {
    if (!corpus) {
      if (!fs::exists(cfg.corpus_path()))
        throw DataError("missing dependency artifact: " + cfg.corpus_path());
      corpus = Corpus::load(cfg.corpus_path());
    }
    return *corpus;
  }

  const MagmaSample& need_sample() {
    if (!sample) {
      if (!fs::exists(cfg.sample_path()))
        throw DataError("missing dependency artifact: " + cfg.sample_path());
      sample = MagmaSample::load(cfg.sample_path());
    }
    return *sample;
  }

  const FeatureMatrix& need_matrix() {
    if (!matrix) {
      if (!fs::exists(cfg.matrix_path()))
        throw DataError("missing dependency artifact: " + cfg.matrix_path());
      matrix = FeatureMatrix::load(cfg.matrix_path());
    }
    return *matrix;
  }

  const LatentEmbedding& need_embedding() {
    if (!embedding) {
      if (!fs::exists(cfg.embedding_path()))
        throw DataError("missing dependency artifact: " +
                        cfg.embedding_path());
      embedding = LatentEmbedding::load_csv(cfg.embedding_path());
    }
    return *embedding;
  }

  const Condensation& need_condensation() {
    if (!cond) {
      if (cfg.graph_path.empty())
        throw DataError("graph.path is not configured");
      graph = ImplicationGraph::load(cfg.graph_path, need_corpus());
      cond = condense(*graph);
    }
    return *cond;
  }

  // --- stages ---------------------------------------------------------------

  json run_corpus() {
    uint64_t h = cfg.stage_hash("corpus");
    if (cache_ok(cfg.corpus_path(), h, false, false)) {
      corpus = Corpus::load(cfg.corpus_path());
    } else {
      corpus = Corpus::enumerate(cfg.max_ops);
      corpus->save(cfg.corpus_path(), header_for("corpus"));
    }
    return corpus_stats_json(*corpus);
  }

  json run_sample() {
    uint64_t h = cfg.stage_hash("sample");
    if (cache_ok(cfg.sample_path(), h, false, false)) {
      sample = MagmaSample::load(cfg.sample_path());
    } else {
      sample = MagmaSample::generate(cfg.sample_n, cfg.sample_size,
                                     cfg.sample_seed, cfg.sample_symmetric);
      sample->save(cfg.sample_path(), header_for("sample"));
    }
    return json{{"n", sample->size()},
                {"N", sample->magma_size()},
                {"seed", sample->seed()},
                {"symmetric", sample->symmetric()}};
  }

  json run_stone() {
    uint64_t h = cfg.stage_hash("stone");
    if (cache_ok(cfg.matrix_path(), h, true, false)) {
      matrix = FeatureMatrix::load(cfg.matrix_path());
    } else {
      matrix = FeatureMatrix::build(need_corpus(), need_sample(), cfg.stone,
                                    threads);
      matrix->save(cfg.matrix_path(), h);
      if (cfg.stone_csv)
        matrix->save_csv(cfg.matrix_csv_path(), header_for("stone"));
    }
    int64_t exact_rows = 0;
    for (int64_t k = 0; k < matrix->rows(); ++k)
      exact_rows += matrix->row_exact(k);
    return json{{"rows", matrix->rows()},
                {"cols", matrix->cols()},
                {"exact_rows", exact_rows},
                {"mode", StoneConfig::mode_name(cfg.stone.mode)}};
  }

  json run_pca() {
    uint64_t h = cfg.stage_hash("pca");
    bool cached = cache_ok(cfg.embedding_path(), h, false, false) &&
                  cache_ok(cfg.pca_meta_path(), h, false, true);
    json meta;
    if (cached) {
      embedding = LatentEmbedding::load_csv(cfg.embedding_path());
      std::ifstream in(cfg.pca_meta_path());
      meta = json::parse(in);
    } else {
      PcaOptions opts;
      opts.k = cfg.pca_k;
      opts.threads = threads;
      const Corpus& c = need_corpus();
      const MagmaSample& s = need_sample();
      if (s.symmetric()) {
        opts.column_involution = s.opposite_pairing();
        opts.row_involution.resize(size_t(c.size()));
        for (int64_t i = 0; i < c.size(); ++i)
          opts.row_involution[size_t(i)] = int32_t(c.conjugate_index(i));
      }
      embedding = pca_embed(need_matrix(), opts);
      fix_signs(*embedding, *matrix, c);
      embedding->save_csv(cfg.embedding_path(), header_for("pca"));
      meta = embedding_meta_json(*embedding, h);
      std::ofstream out(cfg.pca_meta_path());
      if (!out) throw IoError("cannot open for writing: " + cfg.pca_meta_path());
      out << meta.dump(2) << "\n";
    }
    return json{{"singular_values", meta["singular_values"]},
                {"explained_variance_ratio", meta["explained_variance_ratio"]},
                {"k", meta["k"]}};
  }

  json run_graph() {
    uint64_t h = cfg.stage_hash("graph");
    if (cache_ok(cfg.graph_stats_path(), h, false, true)) {
      std::ifstream in(cfg.graph_stats_path());
      json j = json::parse(in);
      // still need the graph in memory if geometry follows; load lazily
      return j["stats"];
    }
    graph = ImplicationGraph::load(cfg.graph_path, need_corpus());
    cond = condense(*graph);
    json stats = graph_stats_json(*graph, *cond);
    json wrapper{{"version", kVersion},
                 {"config", hex16(h)},
                 {"stats", stats}};
    std::ofstream out(cfg.graph_stats_path());
    if (!out) throw IoError("cannot open for writing: " + cfg.graph_stats_path());
    out << wrapper.dump(2) << "\n";
    return stats;
  }

  json run_geometry() {
    uint64_t h = cfg.stage_hash("geometry");
    const Condensation& c = need_condensation();
    const LatentEmbedding& emb =
        embedding ? *embedding : need_embedding();
    EdgeStats stats = edge_lengths(emb, *graph, c, cfg.self_pairs);
    std::string hdr = header_for("geometry");
    write_edge_stats_csv(cfg.edge_stats_path(), stats, hdr);
    CliqueGeometry cg = clique_geometry(emb, c);
    write_cliques_csv(cfg.cliques_path(), cg, c, hdr);
    CrossCliqueMatrix xm = cross_clique_edge_matrix(*graph, c);
    write_cross_clique_csv(cfg.cross_clique_path(), xm, hdr);
    write_scene_csv(cfg.scene_path(), cg, c, hdr);
    (void)h;
    return edge_stats_json(stats);
  }
};

}  // namespace

json run_pipeline(const PipelineConfig& config, int threads) {
  fs::create_directories(config.out_dir);
  Pipeline p(config, threads);
  json report;
  report["version"] = kVersion;
  report["config"] = config.canonical_text();
  report["config_hash"] = hex16(fnv1a64(config.canonical_text()));
  json stages = json::object();

  bool want_graph = !config.graph_path.empty();
  if (p.selected("corpus", true)) stages["corpus"] = p.run_corpus();
  if (p.selected("sample", true)) stages["sample"] = p.run_sample();
  if (p.selected("stone", true)) stages["stone"] = p.run_stone();
  if (p.selected("pca", true)) stages["pca"] = p.run_pca();
  if (p.selected("graph", want_graph)) stages["graph"] = p.run_graph();
  if (p.selected("geometry", want_graph)) stages["geometry"] = p.run_geometry();

  report["stages"] = stages;
  std::ofstream out(config.report_path());
  if (!out) throw IoError("cannot open for writing: " + config.report_path());
  out << report.dump(2) << "\n";
  return report;
}

std::vector<std::string> emit_plot_data(const PipelineConfig& config,
                                        const std::string& kind,
                                        const json& args, int threads) {
  Pipeline p(config, threads);
  fs::create_directories(config.out_dir + "/plots");
  std::string dir = config.out_dir + "/plots/";
  std::vector<std::string> written;
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  if (kind == "scree") {
    std::ifstream in(config.pca_meta_path());
    if (!in) throw DataError("missing artifact: " + config.pca_meta_path());
    json meta = json::parse(in);
    std::string path = dir + "scree.csv";
    std::ofstream out(path);
    out << "component,singular_value,explained_variance_ratio\n";
    auto sv = meta["singular_values"];
    auto ev = meta["explained_variance_ratio"];
    for (size_t i = 0; i < sv.size(); ++i)
      out << (i + 1) << ',' << fmt(sv[i].get<double>()) << ','
          << fmt(ev[i].get<double>()) << "\n";
    written.push_back(path);
  } else if (kind == "spectrum") {
    if (!args.contains("eq")) throw InvalidArgument("spectrum needs an eq index");
    int64_t eq = args["eq"].get<int64_t>();
    Spectrum s = p.need_matrix().spectrum(eq);
    std::string path = dir + "spectrum_" + std::to_string(eq) + ".csv";
    std::ofstream out(path);
    out << "value,multiplicity\n";
    for (const auto& [v, m] : s.run_length())
      out << fmt(v) << ',' << m << "\n";
    written.push_back(path);
    if (args.contains("bins")) {
      int bins = args["bins"].get<int>();
      auto h = s.histogram(bins);
      std::string hpath = dir + "spectrum_" + std::to_string(eq) + "_hist.csv";
      std::ofstream hout(hpath);
      hout << "bin_low,bin_high,count\n";
      for (int b = 0; b < bins; ++b)
        hout << fmt(double(b) / bins) << ',' << fmt(double(b + 1) / bins)
             << ',' << h[size_t(b)] << "\n";
      written.push_back(hpath);
    }
  } else if (kind == "interference") {
    if (!args.contains("eq") || !args.contains("eq2"))
      throw InvalidArgument("interference needs eq and eq2");
    int64_t a = args["eq"].get<int64_t>();
    int64_t b = args["eq2"].get<int64_t>();
    std::string path = dir + "interference_" + std::to_string(a) + "_" +
                       std::to_string(b) + ".csv";
    std::ofstream out(path);
    out << "p,q,multiplicity\n";
    if (args.value("product", false)) {
      // product-measure variant (all cross pairs), for display replication
      auto ra = p.need_matrix().spectrum(a).run_length();
      auto rb = p.need_matrix().spectrum(b).run_length();
      for (const auto& [va, ma] : ra)
        for (const auto& [vb, mb] : rb)
          out << fmt(va) << ',' << fmt(vb) << ',' << (ma * mb) << "\n";
    } else {
      InterferenceSpectrum s = p.need_matrix().interference(a, b);
      for (const auto& [pv, qv, m] : s.run_length())
        out << fmt(pv) << ',' << fmt(qv) << ',' << m << "\n";
    }
    written.push_back(path);
  } else if (kind == "scene") {
    const Condensation& c = p.need_condensation();
    CliqueGeometry cg = clique_geometry(p.need_embedding(), c);
    std::string path = dir + "scene.csv";
    write_scene_csv(path, cg, c, "");
    written.push_back(path);
  } else if (kind == "regression") {
    const LatentEmbedding& emb = p.need_embedding();
    const FeatureMatrix& m = p.need_matrix();
    if (emb.rows != m.rows())
      throw DataError("embedding and matrix artifacts disagree");
    auto emit = [&](const std::string& name, int comp,
                    const std::vector<double>& stat) {
      std::vector<double> axis(size_t(emb.rows));
      for (int64_t i = 0; i < emb.rows; ++i) axis[size_t(i)] = emb.coord(i, comp);
      Regression r = regress(axis, stat);
      std::string path = dir + "regression_" + name + ".csv";
      std::ofstream out(path);
      out << "# slope=" << fmt(r.slope) << " intercept=" << fmt(r.intercept)
          << " r2=" << fmt(r.r2) << "\n";
      out << "index,axis,stat\n";
      for (int64_t i = 0; i < emb.rows; ++i)
        out << i << ',' << fmt(axis[size_t(i)]) << ',' << fmt(stat[size_t(i)])
            << "\n";
      written.push_back(path);
    };
    emit("expectation", 0, m.expectations());
    if (emb.k >= 2) emit("variance", 1, m.variances());
  } else {
    throw InvalidArgument("unknown plot kind: " + kind);
  }
  return written;
}

}  // namespace eqlat
