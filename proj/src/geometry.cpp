#include "eqlat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "eqlat/error.hpp"

namespace eqlat {

SelfPairs parse_self_pairs(const std::string& s) {
  if (s == "include") return SelfPairs::kInclude;
  if (s == "exclude") return SelfPairs::kExclude;
  throw InvalidArgument("self-pairs convention must be include or exclude");
}

std::string self_pairs_name(SelfPairs s) {
  return s == SelfPairs::kInclude ? "include" : "exclude";
}

namespace {

double distance3(const LatentEmbedding& emb, int64_t a, int64_t b) {
  int dims = std::min(emb.k, 3);
  double s = 0;
  for (int d = 0; d < dims; ++d) {
    double diff = emb.coord(a, d) - emb.coord(b, d);
    s += diff * diff;
  }
  return std::sqrt(s);
}

// Nearest-rank quantile on a sorted vector.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0;
  size_t rank = size_t(std::ceil(p * double(sorted.size())));
  if (rank == 0) rank = 1;
  if (rank > sorted.size()) rank = sorted.size();
  return sorted[rank - 1];
}

ClassStats make_stats(std::vector<double>& lengths) {
  ClassStats s;
  s.count = int64_t(lengths.size());
  if (lengths.empty()) return s;
  double sum = 0;
  for (double v : lengths) sum += v;
  s.mean = sum / double(lengths.size());
  double var = 0;
  for (double v : lengths) {
    double d = v - s.mean;
    var += d * d;
  }
  s.stddev = std::sqrt(var / double(lengths.size()));
  std::sort(lengths.begin(), lengths.end());
  s.min = lengths.front();
  s.max = lengths.back();
  s.q25 = quantile(lengths, 0.25);
  s.q50 = quantile(lengths, 0.50);
  s.q75 = quantile(lengths, 0.75);
  return s;
}

}  // namespace

EdgeStats edge_lengths(const LatentEmbedding& emb, const ImplicationGraph& g,
                       const Condensation& c, SelfPairs convention) {
  if (emb.rows != g.vertices())
    throw InvalidArgument("embedding does not cover the graph vertices");
  std::vector<double> reversible, atomic, strict;
  int64_t v = g.vertices();
  for (int64_t j = 0; j < v; ++j) {
    int32_t qj = c.clique_of[size_t(j)];
    g.adjacency().for_each_in_row(j, [&](int64_t k) {
      if (k == j) {
        if (convention == SelfPairs::kInclude) reversible.push_back(0.0);
        return;
      }
      double len = distance3(emb, j, k);
      int32_t qk = c.clique_of[size_t(k)];
      if (qj == qk) {
        reversible.push_back(len);
      } else {
        strict.push_back(len);
        if (c.atomic.test(qj, qk)) atomic.push_back(len);
      }
    });
  }
  EdgeStats out;
  out.convention = convention;
  out.reversible = make_stats(reversible);
  out.atomic = make_stats(atomic);
  out.strict = make_stats(strict);
  return out;
}

CliqueGeometry clique_geometry(const LatentEmbedding& emb,
                               const Condensation& c) {
  int64_t q = c.num_cliques();
  CliqueGeometry out;
  out.centers.assign(size_t(q), {0, 0, 0});
  out.mean_spread.assign(size_t(q), 0);
  out.sizes.assign(size_t(q), 0);
  int dims = std::min(emb.k, 3);
  for (int64_t a = 0; a < q; ++a) {
    const auto& mem = c.members[size_t(a)];
    out.sizes[size_t(a)] = int64_t(mem.size());
    auto& ctr = out.centers[size_t(a)];
    for (int32_t m : mem)
      for (int d = 0; d < dims; ++d) ctr[size_t(d)] += emb.coord(m, d);
    for (int d = 0; d < dims; ++d) ctr[size_t(d)] /= double(mem.size());
    double spread = 0;
    for (int32_t m : mem) {
      double s = 0;
      for (int d = 0; d < dims; ++d) {
        double diff = emb.coord(m, d) - ctr[size_t(d)];
        s += diff * diff;
      }
      spread += std::sqrt(s);
    }
    out.mean_spread[size_t(a)] = spread / double(mem.size());
  }
  out.size_histogram = c.clique_size_histogram();
  return out;
}

CrossCliqueMatrix cross_clique_edge_matrix(const ImplicationGraph& g,
                                           const Condensation& c) {
  CrossCliqueMatrix out;
  {
    auto hist = c.clique_size_histogram();
    for (const auto& [size, count] : hist) out.size_classes.push_back(size);
  }
  size_t nc = out.size_classes.size();
  out.counts.assign(nc * nc, 0);
  auto class_of = [&](int64_t size) {
    return size_t(std::lower_bound(out.size_classes.begin(),
                                   out.size_classes.end(), size) -
                  out.size_classes.begin());
  };
  std::vector<size_t> clique_class(size_t(c.num_cliques()));
  for (int64_t a = 0; a < c.num_cliques(); ++a)
    clique_class[size_t(a)] = class_of(int64_t(c.members[size_t(a)].size()));
  int64_t v = g.vertices();
  for (int64_t j = 0; j < v; ++j) {
    int32_t qj = c.clique_of[size_t(j)];
    size_t sj = clique_class[size_t(qj)];
    g.adjacency().for_each_in_row(j, [&](int64_t k) {
      if (k == j) return;
      int32_t qk = c.clique_of[size_t(k)];
      if (qk == qj) return;
      ++out.counts[sj * nc + clique_class[size_t(qk)]];
    });
  }
  return out;
}

int64_t CrossCliqueMatrix::total() const {
  int64_t t = 0;
  for (int64_t v : counts) t += v;
  return t;
}

namespace {
void open_csv(std::ofstream& out, const std::string& path,
              const std::string& header) {
  out.open(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  if (!header.empty()) out << "# " << header << "\n";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void write_edge_stats_csv(const std::string& path, const EdgeStats& s,
                          const std::string& header) {
  std::ofstream out;
  open_csv(out, path, header);
  out << "# self_pairs=" << self_pairs_name(s.convention) << "\n";
  out << "class,count,mean,std,min,q25,q50,q75,max\n";
  auto row = [&](const char* name, const ClassStats& c) {
    out << name << ',' << c.count << ',' << fmt(c.mean) << ',' << fmt(c.stddev)
        << ',' << fmt(c.min) << ',' << fmt(c.q25) << ',' << fmt(c.q50) << ','
        << fmt(c.q75) << ',' << fmt(c.max) << "\n";
  };
  row("reversible", s.reversible);
  row("atomic", s.atomic);
  row("strict", s.strict);
  if (!out) throw IoError("write failed: " + path);
}

void write_cliques_csv(const std::string& path, const CliqueGeometry& cg,
                       const Condensation& c, const std::string& header) {
  std::ofstream out;
  open_csv(out, path, header);
  out << "clique,size,center_x,center_y,center_z,mean_spread,members\n";
  for (int64_t a = 0; a < c.num_cliques(); ++a) {
    out << a << ',' << cg.sizes[size_t(a)] << ','
        << fmt(cg.centers[size_t(a)][0]) << ',' << fmt(cg.centers[size_t(a)][1])
        << ',' << fmt(cg.centers[size_t(a)][2]) << ','
        << fmt(cg.mean_spread[size_t(a)]) << ',';
    const auto& mem = c.members[size_t(a)];
    for (size_t i = 0; i < mem.size(); ++i) {
      if (i) out << ' ';
      out << mem[i];
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_cross_clique_csv(const std::string& path,
                            const CrossCliqueMatrix& m,
                            const std::string& header) {
  std::ofstream out;
  open_csv(out, path, header);
  out << "size";
  for (int64_t s : m.size_classes) out << ',' << s;
  out << "\n";
  for (size_t i = 0; i < m.size_classes.size(); ++i) {
    out << m.size_classes[i];
    for (size_t j = 0; j < m.size_classes.size(); ++j)
      out << ',' << m.at(i, j);
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_scene_csv(const std::string& path, const CliqueGeometry& cg,
                     const Condensation& c, const std::string& header) {
  std::ofstream out;
  open_csv(out, path, header);
  out << "kind,x1,y1,z1,x2,y2,z2,radius\n";
  for (int64_t a = 0; a < c.num_cliques(); ++a) {
    const auto& ctr = cg.centers[size_t(a)];
    out << "ball," << fmt(ctr[0]) << ',' << fmt(ctr[1]) << ',' << fmt(ctr[2])
        << ",0,0,0," << cg.sizes[size_t(a)] << "\n";
  }
  for (int64_t a = 0; a < c.num_cliques(); ++a) {
    const auto& src = cg.centers[size_t(a)];
    c.atomic.for_each_in_row(a, [&](int64_t b) {
      const auto& dst = cg.centers[size_t(b)];
      out << "arrow," << fmt(src[0]) << ',' << fmt(src[1]) << ',' << fmt(src[2])
          << ',' << fmt(dst[0]) << ',' << fmt(dst[1]) << ',' << fmt(dst[2])
          << ",0\n";
    });
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace eqlat
