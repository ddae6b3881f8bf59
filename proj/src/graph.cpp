#include "eqlat/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <tuple>

#include "eqlat/error.hpp"
#include "eqlat/util.hpp"

namespace eqlat {

int64_t BitMatrix::count_row(int64_t r) const {
  int64_t n = 0;
  for (uint64_t w : row(r)) n += std::popcount(w);
  return n;
}

int64_t BitMatrix::count_all() const {
  int64_t n = 0;
  for (uint64_t w : bits_) n += std::popcount(w);
  return n;
}

void reflexive_transitive_closure(BitMatrix& m) {
  int64_t v = m.rows();
  for (int64_t i = 0; i < v; ++i) m.set(i, i);
  for (int64_t k = 0; k < v; ++k) {
    auto rk = m.row(k);
    for (int64_t i = 0; i < v; ++i) {
      if (!m.test(i, k)) continue;
      auto ri = m.row(i);
      for (size_t w = 0; w < ri.size(); ++w) ri[w] |= rk[w];
    }
  }
}

ImplicationGraph ImplicationGraph::from_edges(
    int64_t vertices, const std::vector<std::pair<int32_t, int32_t>>& edges) {
  if (vertices < 1) throw InvalidArgument("graph needs at least one vertex");
  ImplicationGraph g;
  g.adj_ = BitMatrix(vertices, vertices);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= vertices || b < 0 || b >= vertices)
      throw InvalidArgument("edge endpoint out of range");
    g.adj_.set(a, b);
  }
  for (int64_t i = 0; i < vertices; ++i) g.adj_.set(i, i);
  return g;
}

ImplicationGraph ImplicationGraph::load(const std::string& path,
                                        const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  int64_t v = corpus.size();
  ImplicationGraph g;
  g.adj_ = BitMatrix(v, v);
  bool et_ids = false;
  std::string line;
  size_t lineno = 0;
  auto resolve = [&](long long id, size_t at_line) -> int64_t {
    if (et_ids) {
      auto idx = corpus.index_of_external(id);
      if (!idx)
        throw DataError("unknown external equation number " +
                        std::to_string(id) + " (line " +
                        std::to_string(at_line) + ")");
      return *idx;
    }
    if (id < 0 || id >= v)
      throw DataError("equation index out of range: " + std::to_string(id) +
                      " (line " + std::to_string(at_line) + ")");
    return id;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("ids=et") != std::string::npos) {
        if (!corpus.has_external_numbering())
          throw DataError(
              "preorder file uses ids=et but the corpus has no external "
              "numbering loaded");
        et_ids = true;
      }
      continue;
    }
    std::istringstream row(line);
    long long a, b;
    if (!(row >> a >> b))
      throw ParseError("expected two ids per line", lineno, true);
    std::string rest;
    if (row >> rest) throw ParseError("trailing tokens", lineno, true);
    g.adj_.set(resolve(a, lineno), resolve(b, lineno));
  }
  for (int64_t i = 0; i < v; ++i) g.adj_.set(i, i);
  g.validate();
  return g;
}

void ImplicationGraph::validate() const {
  int64_t v = vertices();
  for (int64_t i = 0; i < v; ++i)
    if (!adj_.test(i, i)) throw DataError("missing reflexive implication");
  // full check: for each edge j->k, row(k) must be contained in row(j)
  if (v <= 8192) {
    for (int64_t j = 0; j < v; ++j) {
      auto rj = adj_.row(j);
      bool bad = false;
      adj_.for_each_in_row(j, [&](int64_t k) {
        if (bad || k == j) return;
        auto rk = adj_.row(k);
        for (size_t w = 0; w < rk.size(); ++w)
          if (rk[w] & ~rj[w]) {
            bad = true;
            return;
          }
      });
      if (bad)
        throw DataError("implication relation is not transitive at vertex " +
                        std::to_string(j));
    }
    return;
  }
  // sampled audit for very large graphs
  SplitMix64 rng(mix64(uint64_t(v)) ^ uint64_t(total_implications()));
  for (int audit = 0; audit < 200000; ++audit) {
    int64_t a = int64_t(rng.next_below(uint64_t(v)));
    std::vector<int64_t> succ;
    adj_.for_each_in_row(a, [&](int64_t k) { succ.push_back(k); });
    if (succ.empty()) continue;
    int64_t b = succ[size_t(rng.next_below(succ.size()))];
    std::vector<int64_t> succ2;
    adj_.for_each_in_row(b, [&](int64_t k) { succ2.push_back(k); });
    int64_t c = succ2[size_t(rng.next_below(succ2.size()))];
    if (!adj_.test(a, c))
      throw DataError("implication relation is not transitive (audit)");
  }
}

// --- condensation ------------------------------------------------------------

namespace {

// Iterative Tarjan strongly-connected components over bit rows.
std::vector<int32_t> tarjan_scc(const BitMatrix& adj, int32_t* num_out) {
  int64_t v = adj.rows();
  std::vector<int32_t> index(size_t(v), -1), low(size_t(v), 0);
  std::vector<int32_t> comp(size_t(v), -1);
  std::vector<uint8_t> on_stack(size_t(v), 0);
  std::vector<int32_t> stack;
  int32_t next_index = 0, next_comp = 0;

  struct Frame {
    int32_t v;
    size_t word;
    uint64_t bits;
  };
  std::vector<Frame> frames;
  auto first_bits = [&](int32_t u) -> Frame {
    auto row = adj.row(u);
    return Frame{u, 0, row.empty() ? 0 : row[0]};
  };

  for (int64_t root = 0; root < v; ++root) {
    if (index[size_t(root)] >= 0) continue;
    frames.push_back(first_bits(int32_t(root)));
    index[size_t(root)] = low[size_t(root)] = next_index++;
    stack.push_back(int32_t(root));
    on_stack[size_t(root)] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto row = adj.row(f.v);
      int32_t child = -1;
      while (true) {
        if (f.bits) {
          int b = std::countr_zero(f.bits);
          f.bits &= f.bits - 1;
          int64_t w = int64_t(f.word) * 64 + b;
          if (w == f.v) continue;  // self loop
          child = int32_t(w);
          break;
        }
        if (++f.word >= row.size()) break;
        f.bits = row[f.word];
      }
      if (child >= 0) {
        if (index[size_t(child)] < 0) {
          index[size_t(child)] = low[size_t(child)] = next_index++;
          stack.push_back(child);
          on_stack[size_t(child)] = 1;
          frames.push_back(first_bits(child));
        } else if (on_stack[size_t(child)]) {
          low[size_t(f.v)] = std::min(low[size_t(f.v)], index[size_t(child)]);
        }
        continue;
      }
      // exhausted
      int32_t u = f.v;
      frames.pop_back();
      if (!frames.empty())
        low[size_t(frames.back().v)] =
            std::min(low[size_t(frames.back().v)], low[size_t(u)]);
      if (low[size_t(u)] == index[size_t(u)]) {
        while (true) {
          int32_t w = stack.back();
          stack.pop_back();
          on_stack[size_t(w)] = 0;
          comp[size_t(w)] = next_comp;
          if (w == u) break;
        }
        ++next_comp;
      }
    }
  }
  *num_out = next_comp;
  return comp;
}

}  // namespace

Condensation condense(const ImplicationGraph& g) {
  const BitMatrix& adj = g.adjacency();
  int64_t v = g.vertices();
  Condensation c;
  int32_t raw_count = 0;
  std::vector<int32_t> raw = tarjan_scc(adj, &raw_count);

  // renumber cliques by smallest member for a stable order
  std::vector<int32_t> min_member(size_t(raw_count), int32_t(v));
  for (int64_t i = 0; i < v; ++i)
    min_member[size_t(raw[size_t(i)])] =
        std::min(min_member[size_t(raw[size_t(i)])], int32_t(i));
  std::vector<int32_t> order(size_t(raw_count));
  for (int32_t i = 0; i < raw_count; ++i) order[size_t(i)] = i;
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    return min_member[size_t(a)] < min_member[size_t(b)];
  });
  std::vector<int32_t> renumber(size_t(raw_count));
  for (int32_t i = 0; i < raw_count; ++i) renumber[size_t(order[size_t(i)])] = i;

  c.clique_of.assign(size_t(v), 0);
  c.members.assign(size_t(raw_count), {});
  for (int64_t i = 0; i < v; ++i) {
    int32_t q = renumber[size_t(raw[size_t(i)])];
    c.clique_of[size_t(i)] = q;
    c.members[size_t(q)].push_back(int32_t(i));
  }

  c.total_implications = g.total_implications();
  c.reversible_count_incl_self = 0;
  for (const auto& mem : c.members)
    c.reversible_count_incl_self += int64_t(mem.size()) * int64_t(mem.size());
  c.reversible_count_excl_self = c.reversible_count_incl_self - v;
  c.strict_count = c.total_implications - c.reversible_count_incl_self;

  // clique-level strict order (transitively closed because the vertex
  // relation is)
  int64_t q = raw_count;
  c.clique_order = BitMatrix(q, q);
  for (int64_t i = 0; i < v; ++i) {
    int32_t qi = c.clique_of[size_t(i)];
    adj.for_each_in_row(i, [&](int64_t k) {
      int32_t qk = c.clique_of[size_t(k)];
      if (qk != qi) c.clique_order.set(qi, qk);
    });
  }

  // transitive reduction: drop every edge with a two-step witness
  c.atomic = BitMatrix(q, q);
  std::vector<uint64_t> reach_via(c.clique_order.words_per_row());
  for (int64_t a = 0; a < q; ++a) {
    std::fill(reach_via.begin(), reach_via.end(), 0);
    c.clique_order.for_each_in_row(a, [&](int64_t w) {
      auto rw = c.clique_order.row(w);
      for (size_t i = 0; i < rw.size(); ++i) reach_via[i] |= rw[i];
    });
    auto ra = c.clique_order.row(a);
    auto out = c.atomic.row(a);
    for (size_t i = 0; i < ra.size(); ++i) out[i] = ra[i] & ~reach_via[i];
  }
  return c;
}

int64_t Condensation::clique_order_edge_count() const {
  return clique_order.count_all();
}

int64_t Condensation::atomic_clique_edge_count() const {
  return atomic.count_all();
}

int64_t Condensation::vertex_atomic_count() const {
  int64_t total = 0;
  for (int64_t a = 0; a < num_cliques(); ++a) {
    int64_t sa = int64_t(members[size_t(a)].size());
    atomic.for_each_in_row(a, [&](int64_t b) {
      total += sa * int64_t(members[size_t(b)].size());
    });
  }
  return total;
}

std::map<int64_t, int64_t> Condensation::clique_size_histogram() const {
  std::map<int64_t, int64_t> h;
  for (const auto& mem : members) ++h[int64_t(mem.size())];
  return h;
}

// --- longest paths -----------------------------------------------------------

std::vector<std::vector<int32_t>> longest_paths(const Condensation& c,
                                                int top) {
  if (top < 1) return {};
  int64_t q = c.num_cliques();
  // longest escape (in edges) from each clique, over the atomic DAG
  std::vector<int32_t> longest_from(size_t(q), -1);
  std::vector<int32_t> in_degree(size_t(q), 0);
  for (int64_t a = 0; a < q; ++a)
    c.atomic.for_each_in_row(a, [&](int64_t b) { ++in_degree[size_t(b)]; });
  std::function<int32_t(int64_t)> escape = [&](int64_t a) -> int32_t {
    int32_t& memo = longest_from[size_t(a)];
    if (memo >= 0) return memo;
    memo = 0;  // also guards against accidental cycles
    int32_t best = 0;
    c.atomic.for_each_in_row(
        a, [&](int64_t b) { best = std::max(best, int32_t(escape(b) + 1)); });
    memo = best;
    return memo;
  };
  for (int64_t a = 0; a < q; ++a) escape(a);

  struct State {
    std::vector<int32_t> path;
    int32_t potential;
  };
  auto later = [](const State& a, const State& b) {
    if (a.potential != b.potential) return a.potential < b.potential;
    return a.path > b.path;  // lexicographically smaller first
  };
  std::priority_queue<State, std::vector<State>, decltype(later)> queue(later);
  for (int64_t a = 0; a < q; ++a)
    if (in_degree[size_t(a)] == 0)
      queue.push({{int32_t(a)}, escape(a)});

  std::vector<std::vector<int32_t>> out;
  int64_t expansions = 0;
  while (!queue.empty() && int(out.size()) < top && expansions < 2000000) {
    State s = queue.top();
    queue.pop();
    ++expansions;
    int32_t last = s.path.back();
    if (longest_from[size_t(last)] == 0) {
      out.push_back(s.path);
      continue;
    }
    c.atomic.for_each_in_row(last, [&](int64_t b) {
      State nxt;
      nxt.path = s.path;
      nxt.path.push_back(int32_t(b));
      nxt.potential = int32_t(nxt.path.size()) - 1 + longest_from[size_t(b)];
      queue.push(std::move(nxt));
    });
  }
  return out;
}

// --- parallel edges ----------------------------------------------------------

std::vector<ParallelEdgePair> parallel_edge_candidates(
    const Condensation& c, const LatentEmbedding& emb, double angle_tol,
    double length_tol, int64_t max_out) {
  if (angle_tol < 0 || length_tol < 0)
    throw InvalidArgument("tolerances must be non-negative");
  int64_t q = c.num_cliques();
  int dims = std::min(emb.k, 3);
  std::vector<std::array<double, 3>> centers(size_t(q), {0, 0, 0});
  for (int64_t a = 0; a < q; ++a) {
    const auto& mem = c.members[size_t(a)];
    for (int32_t m : mem)
      for (int d = 0; d < dims; ++d) centers[size_t(a)][size_t(d)] += emb.coord(m, d);
    for (int d = 0; d < dims; ++d)
      centers[size_t(a)][size_t(d)] /= double(mem.size());
  }
  struct Edge {
    int32_t src, dst;
    std::array<double, 3> dir;
    double len;
  };
  std::vector<Edge> edges;
  for (int64_t a = 0; a < q; ++a)
    c.atomic.for_each_in_row(a, [&](int64_t b) {
      Edge e;
      e.src = int32_t(a);
      e.dst = int32_t(b);
      double len2 = 0;
      for (int d = 0; d < 3; ++d) {
        e.dir[size_t(d)] = centers[size_t(b)][size_t(d)] - centers[size_t(a)][size_t(d)];
        len2 += e.dir[size_t(d)] * e.dir[size_t(d)];
      }
      e.len = std::sqrt(len2);
      if (e.len > 0) edges.push_back(e);
    });

  std::vector<ParallelEdgePair> out;
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& a = edges[i];
      const Edge& b = edges[j];
      double rel_len = std::abs(a.len - b.len) / std::max(a.len, b.len);
      if (rel_len > length_tol) continue;
      double dp = 0;
      for (int d = 0; d < 3; ++d) dp += a.dir[size_t(d)] * b.dir[size_t(d)];
      double cosv = dp / (a.len * b.len);
      cosv = std::clamp(cosv, -1.0, 1.0);
      double angle = std::acos(cosv);
      if (angle > angle_tol) continue;
      ParallelEdgePair p;
      p.src_a = a.src;
      p.dst_a = a.dst;
      p.src_b = b.src;
      p.dst_b = b.dst;
      p.angle = angle;
      p.length_a = a.len;
      p.length_b = b.len;
      p.score = 0.5 * (angle_tol > 0 ? angle / angle_tol : 0.0) +
                0.5 * (length_tol > 0 ? rel_len / length_tol : 0.0);
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](const ParallelEdgePair& a,
                                       const ParallelEdgePair& b) {
    if (a.score != b.score) return a.score < b.score;
    return std::tie(a.src_a, a.dst_a, a.src_b, a.dst_b) <
           std::tie(b.src_a, b.dst_a, b.src_b, b.dst_b);
  });
  if (max_out >= 0 && int64_t(out.size()) > max_out) out.resize(size_t(max_out));
  return out;
}

}  // namespace eqlat
