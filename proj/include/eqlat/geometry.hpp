#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eqlat/graph.hpp"
#include "eqlat/pca.hpp"

namespace eqlat {

// Self-loop accounting for vertex-level edge statistics:
//  - kInclude: self-pairs count as reversible edges (of length zero),
//  - kExclude: self-pairs are dropped entirely.
enum class SelfPairs { kInclude, kExclude };

SelfPairs parse_self_pairs(const std::string& s);
std::string self_pairs_name(SelfPairs s);

struct ClassStats {
  int64_t count = 0;
  double mean = 0, stddev = 0;
  double min = 0, q25 = 0, q50 = 0, q75 = 0, max = 0;
};

// Euclidean edge lengths in the (up to 3D) latent space, split by edge
// class. Atomic edges are the vertex-level pairs whose cliques sit on a
// transitive-reduction edge; they are also counted under strict.
struct EdgeStats {
  ClassStats reversible, atomic, strict;
  SelfPairs convention = SelfPairs::kInclude;
};

EdgeStats edge_lengths(const LatentEmbedding& emb, const ImplicationGraph& g,
                       const Condensation& c, SelfPairs convention);

struct CliqueGeometry {
  std::vector<std::array<double, 3>> centers;  // per clique
  std::vector<double> mean_spread;  // mean member-to-center distance
  std::vector<int64_t> sizes;
  std::map<int64_t, int64_t> size_histogram;
};

CliqueGeometry clique_geometry(const LatentEmbedding& emb,
                               const Condensation& c);

// Entry (s, t) counts vertex-level strict implications from members of
// cliques of size s to members of cliques of size t.
struct CrossCliqueMatrix {
  std::vector<int64_t> size_classes;  // sorted distinct clique sizes
  std::vector<int64_t> counts;        // size_classes^2, row-major
  int64_t at(size_t s_class, size_t t_class) const {
    return counts[s_class * size_classes.size() + t_class];
  }
  int64_t total() const;
};

CrossCliqueMatrix cross_clique_edge_matrix(const ImplicationGraph& g,
                                           const Condensation& c);

// File exports (CSV with a comment header).
void write_edge_stats_csv(const std::string& path, const EdgeStats& s,
                          const std::string& header);
void write_cliques_csv(const std::string& path, const CliqueGeometry& cg,
                       const Condensation& c, const std::string& header);
void write_cross_clique_csv(const std::string& path,
                            const CrossCliqueMatrix& m,
                            const std::string& header);
// One row per object: kind,x1,y1,z1,x2,y2,z2,radius. Balls use x1..z1 and
// radius (= clique size); arrows use both endpoints.
void write_scene_csv(const std::string& path, const CliqueGeometry& cg,
                     const Condensation& c, const std::string& header);

}  // namespace eqlat
