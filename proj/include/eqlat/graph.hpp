#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eqlat/corpus.hpp"
#include "eqlat/pca.hpp"

namespace eqlat {

// Dense bit matrix with 64-bit row words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int64_t rows, int64_t cols)
      : rows_(rows), cols_(cols), words_(size_t((cols + 63) / 64)) {
    bits_.assign(size_t(rows) * words_, 0);
  }

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }
  size_t words_per_row() const { return words_; }

  void set(int64_t r, int64_t c) {
    bits_[size_t(r) * words_ + size_t(c >> 6)] |= uint64_t(1) << (c & 63);
  }
  bool test(int64_t r, int64_t c) const {
    return (bits_[size_t(r) * words_ + size_t(c >> 6)] >>
            (c & 63)) & 1;
  }
  std::span<uint64_t> row(int64_t r) {
    return {bits_.data() + size_t(r) * words_, words_};
  }
  std::span<const uint64_t> row(int64_t r) const {
    return {bits_.data() + size_t(r) * words_, words_};
  }
  int64_t count_row(int64_t r) const;
  int64_t count_all() const;

  template <typename F>
  void for_each_in_row(int64_t r, F fn) const {
    auto w = row(r);
    for (size_t wi = 0; wi < w.size(); ++wi) {
      uint64_t bits = w[wi];
      while (bits) {
        int b = std::countr_zero(bits);
        fn(int64_t(wi) * 64 + b);
        bits &= bits - 1;
      }
    }
  }

 private:
  int64_t rows_ = 0, cols_ = 0;
  size_t words_ = 0;
  std::vector<uint64_t> bits_;
};

// In-place reflexive-transitive closure (for small synthetic relations).
void reflexive_transitive_closure(BitMatrix& m);

// The implication relation between laws of one corpus: reflexive and
// transitive by contract; ingest adds the reflexive closure and audits
// transitivity.
class ImplicationGraph {
 public:
  ImplicationGraph() = default;

  // Header comments may carry "ids=index" (default) or "ids=et"; data lines
  // are "j k" meaning law j implies law k. With ids=et the corpus must have
  // an external numbering loaded. Duplicate edges are fine.
  static ImplicationGraph load(const std::string& path, const Corpus& corpus);

  // From explicit edges over [0, vertices); adds the reflexive closure but
  // does NOT transitively close.
  static ImplicationGraph from_edges(
      int64_t vertices, const std::vector<std::pair<int32_t, int32_t>>& edges);

  int64_t vertices() const { return adj_.rows(); }
  bool implies(int64_t j, int64_t k) const { return adj_.test(j, k); }
  int64_t total_implications() const { return adj_.count_all(); }
  const BitMatrix& adjacency() const { return adj_; }
  BitMatrix& mutable_adjacency() { return adj_; }

  // Throws DataError on a transitivity violation. Checks every edge pair
  // when the graph is small enough, a seeded sample otherwise.
  void validate() const;

 private:
  BitMatrix adj_;
};

// The graph collapsed along mutual implication: cliques (equivalence
// classes), the strict order between them, and its transitive reduction
// (the indecomposable steps).
struct Condensation {
  std::vector<int32_t> clique_of;            // per vertex
  std::vector<std::vector<int32_t>> members;  // per clique, sorted
  BitMatrix clique_order;  // strict reach between cliques (closed)
  BitMatrix atomic;        // transitive reduction of clique_order

  int64_t total_implications = 0;
  int64_t strict_count = 0;                 // vertex-level, cross-clique
  int64_t reversible_count_incl_self = 0;   // sum of |clique|^2
  int64_t reversible_count_excl_self = 0;

  int64_t num_cliques() const { return int64_t(members.size()); }
  int64_t clique_order_edge_count() const;
  int64_t atomic_clique_edge_count() const;
  // Vertex-level indecomposable steps: sum over atomic clique edges of
  // |source| * |target|.
  int64_t vertex_atomic_count() const;
  std::map<int64_t, int64_t> clique_size_histogram() const;
};

// Tarjan over the bit-matrix adjacency (iterative), then the clique-level
// order and its unique transitive reduction via reachability rows.
Condensation condense(const ImplicationGraph& g);

// Up to `top` maximal paths in the atomic DAG, ranked by edge count
// descending, ties by lexicographic clique sequence. A maximal path starts
// at a vertex with no atomic predecessor and ends at one with no successor.
std::vector<std::vector<int32_t>> longest_paths(const Condensation& c,
                                                int top);

struct ParallelEdgePair {
  int32_t src_a, dst_a, src_b, dst_b;  // clique ids
  double angle;                        // radians between directions
  double length_a, length_b;
  double score;  // lower is more parallel
};

// Pairs of atomic clique edges (drawn between clique centers of mass in the
// embedding) whose directions agree within angle_tol and whose lengths agree
// within length_tol (relative), ranked by combined score.
std::vector<ParallelEdgePair> parallel_edge_candidates(
    const Condensation& c, const LatentEmbedding& emb, double angle_tol,
    double length_tol, int64_t max_out);

}  // namespace eqlat
