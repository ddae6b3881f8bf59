#include "eqlat/pca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eqlat/error.hpp"
#include "eqlat/util.hpp"

namespace eqlat {

namespace {

// Snap a vector onto its dominant symmetry class under an involution P:
// the symmetric part (v + Pv)/2 or the antisymmetric part (v - Pv)/2,
// whichever is larger, written back so that v[p[i]] is bit-exactly
// +/- v[i]. Returns false if the vector vanishes.
bool project_symmetry_class(std::vector<double>& v,
                            const std::vector<int32_t>& p) {
  size_t n = v.size();
  double sym_norm = 0, asym_norm = 0;
  for (size_t i = 0; i < n; ++i) {
    size_t j = size_t(p[i]);
    double s = 0.5 * (v[i] + v[j]);
    double a = 0.5 * (v[i] - v[j]);
    sym_norm += s * s;
    asym_norm += a * a;
  }
  bool sym = sym_norm >= asym_norm;
  for (size_t i = 0; i < n; ++i) {
    size_t j = size_t(p[i]);
    if (j < i) continue;
    if (j == i) {
      if (!sym) v[i] = 0;
      continue;
    }
    double half = 0.5 * (sym ? v[i] + v[j] : v[i] - v[j]);
    v[i] = half;
    v[j] = sym ? half : -half;
  }
  double norm = 0;
  for (double x : v) norm += x * x;
  return norm > 0;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(std::vector<double>& v) {
  double n = std::sqrt(dot(v, v));
  if (n > 0)
    for (double& x : v) x /= n;
}

// Dominant eigenpair of the symmetric matrix A (dense, d x d) orthogonal to
// the already-found eigenvectors.
double power_iterate(const std::vector<double>& a, int64_t d,
                     const std::vector<std::vector<double>>& found,
                     double tolerance, int max_iterations, int threads,
                     uint64_t seed, std::vector<double>& vec) {
  vec.assign(size_t(d), 0.0);
  SplitMix64 rng(seed);
  for (auto& x : vec) x = rng.next_unit() - 0.5;
  normalize(vec);
  std::vector<double> next(size_t(d));
  double lambda = 0;
  for (int it = 0; it < max_iterations; ++it) {
    for (const auto& u : found) {
      double c = dot(vec, u);
      for (size_t i = 0; i < vec.size(); ++i) vec[i] -= c * u[i];
    }
    normalize(vec);
    parallel_for(d, threads, [&](int64_t r) {
      const double* row = a.data() + r * d;
      double s = 0;
      for (int64_t c = 0; c < d; ++c) s += row[size_t(c)] * vec[size_t(c)];
      next[size_t(r)] = s;
    });
    double new_lambda = dot(vec, next);
    std::swap(vec, next);
    normalize(vec);
    double scale = std::max(std::abs(new_lambda), 1e-300);
    if (it > 0 && std::abs(new_lambda - lambda) <= tolerance * scale) {
      lambda = new_lambda;
      return lambda;
    }
    lambda = new_lambda;
  }
  throw ConvergenceError("power iteration hit the iteration cap");
}

}  // namespace

LatentEmbedding pca_embed(const FeatureMatrix& f, const PcaOptions& opts) {
  int64_t m = f.rows(), n = f.cols();
  int k = opts.k;
  if (k < 1 || k > 10) throw InvalidArgument("component count must be in [1, 10]");
  if (m < k + 1)
    throw InvalidArgument("need at least k+1 equations for a rank-k embedding");
  if (n < 2) throw InvalidArgument("need at least 2 sample columns");
  if (!opts.column_involution.empty() &&
      int64_t(opts.column_involution.size()) != n)
    throw InvalidArgument("column involution has wrong length");
  if (!opts.row_involution.empty() && int64_t(opts.row_involution.size()) != m)
    throw InvalidArgument("row involution has wrong length");

  LatentEmbedding emb;
  emb.rows = m;
  emb.k = k;

  // center columns; keep the center exactly symmetric under the column
  // involution so the symmetry of the data survives rounding
  std::vector<double> mu(size_t(n), 0.0);
  for (int64_t j = 0; j < n; ++j) {
    double s = 0;
    for (int64_t i = 0; i < m; ++i) s += f.value(i, j);
    mu[size_t(j)] = s / double(m);
  }
  if (!opts.column_involution.empty()) {
    for (int64_t j = 0; j < n; ++j) {
      int64_t pj = opts.column_involution[size_t(j)];
      if (pj > j) {
        double avg = 0.5 * (mu[size_t(j)] + mu[size_t(pj)]);
        mu[size_t(j)] = avg;
        mu[size_t(pj)] = avg;
      }
    }
  }
  emb.center = mu;

  // centered matrix, float storage (same rounding for equal inputs)
  std::vector<float> x(size_t(m) * size_t(n));
  parallel_for(m, opts.threads, [&](int64_t i) {
    for (int64_t j = 0; j < n; ++j)
      x[size_t(i * n + j)] = float(f.value(i, j) - mu[size_t(j)]);
  });

  double total_variance = 0;
  for (float v : x) total_variance += double(v) * double(v);
  total_variance /= double(n);
  if (total_variance <= 0)
    throw DataError("degenerate input: all rows identical");

  // Gram matrix on the smaller side, normalized by the column count
  bool column_side = n <= m;
  int64_t d = column_side ? n : m;
  std::vector<double> gram(size_t(d) * size_t(d));
  if (column_side) {
    parallel_for(d, opts.threads, [&](int64_t a) {
      for (int64_t b = a; b < d; ++b) {
        double s = 0;
        for (int64_t i = 0; i < m; ++i)
          s += double(x[size_t(i * n + a)]) * double(x[size_t(i * n + b)]);
        gram[size_t(a * d + b)] = s / double(n);
        gram[size_t(b * d + a)] = s / double(n);
      }
    });
  } else {
    parallel_for(d, opts.threads, [&](int64_t a) {
      const float* ra = x.data() + a * n;
      for (int64_t b = a; b < d; ++b) {
        const float* rb = x.data() + b * n;
        double s = 0;
        for (int64_t j = 0; j < n; ++j)
          s += double(ra[size_t(j)]) * double(rb[size_t(j)]);
        gram[size_t(a * d + b)] = s / double(n);
        gram[size_t(b * d + a)] = s / double(n);
      }
    });
  }

  int want = std::min<int64_t>(std::max(opts.spectrum_components, k), d);
  std::vector<std::vector<double>> gram_vecs;
  std::vector<double> eigenvalues;
  const std::vector<int32_t>& gram_involution =
      column_side ? opts.column_involution : opts.row_involution;
  for (int j = 0; j < want; ++j) {
    std::vector<double> w;
    double lambda =
        power_iterate(gram, d, gram_vecs, opts.tolerance, opts.max_iterations,
                      opts.threads, substream(0x9ca0ull, uint64_t(j)), w);
    if (lambda < 0) lambda = 0;
    if (!eigenvalues.empty() && lambda <= 1e-12 * eigenvalues.front()) break;
    if (!gram_involution.empty()) {
      if (!project_symmetry_class(w, gram_involution)) break;
      // re-orthogonalize inside the class and renormalize
      for (const auto& u : gram_vecs) {
        double c = dot(w, u);
        for (size_t i = 0; i < w.size(); ++i) w[i] -= c * u[i];
      }
      normalize(w);
      project_symmetry_class(w, gram_involution);
      normalize(w);
    }
    eigenvalues.push_back(lambda);
    gram_vecs.push_back(std::move(w));
    // deflate
    const auto& u = gram_vecs.back();
    parallel_for(d, opts.threads, [&](int64_t r) {
      double ur = u[size_t(r)];
      double* row = gram.data() + r * d;
      for (int64_t c = 0; c < d; ++c)
        row[size_t(c)] -= lambda * ur * u[size_t(c)];
    });
    if (int(eigenvalues.size()) >= k &&
        eigenvalues.back() <= 1e-12 * eigenvalues.front())
      break;
  }
  if (int(eigenvalues.size()) < k)
    throw DataError("matrix rank below the requested component count");

  // directions in sample space
  for (size_t j = 0; j < eigenvalues.size(); ++j) {
    std::vector<double> dir;
    if (column_side) {
      dir = gram_vecs[j];
    } else {
      dir.assign(size_t(n), 0.0);
      const auto& w = gram_vecs[j];
      for (int64_t i = 0; i < m; ++i) {
        double wi = w[size_t(i)];
        const float* row = x.data() + i * n;
        for (int64_t c = 0; c < n; ++c) dir[size_t(c)] += wi * double(row[size_t(c)]);
      }
      normalize(dir);
      if (!opts.column_involution.empty()) {
        project_symmetry_class(dir, opts.column_involution);
        normalize(dir);
      }
    }
    emb.components.push_back(std::move(dir));
    emb.singular_values.push_back(std::sqrt(eigenvalues[j] * double(n)));
    emb.explained_variance_ratio.push_back(eigenvalues[j] / total_variance);
  }

  emb.coords.assign(size_t(m) * size_t(k), 0.0);
  parallel_for(m, opts.threads, [&](int64_t i) {
    const float* row = x.data() + i * n;
    for (int c = 0; c < k; ++c) {
      const auto& dir = emb.components[size_t(c)];
      double s = 0;
      for (int64_t j = 0; j < n; ++j) s += double(row[size_t(j)]) * dir[size_t(j)];
      emb.coords[size_t(i) * size_t(k) + size_t(c)] = s;
    }
  });
  return emb;
}

void fix_signs(LatentEmbedding& emb, const FeatureMatrix& f, const Corpus& c) {
  if (emb.rows != f.rows() || emb.rows != c.size())
    throw InvalidArgument("embedding, matrix and corpus sizes disagree");
  auto flip = [&](int comp) {
    for (int64_t i = 0; i < emb.rows; ++i)
      emb.coords[size_t(i) * size_t(emb.k) + size_t(comp)] =
          -emb.coords[size_t(i) * size_t(emb.k) + size_t(comp)];
    if (size_t(comp) < emb.components.size())
      for (double& v : emb.components[size_t(comp)]) v = -v;
  };
  auto column = [&](int comp) {
    std::vector<double> col(size_t(emb.rows));
    for (int64_t i = 0; i < emb.rows; ++i) col[size_t(i)] = emb.coord(i, comp);
    return col;
  };
  if (emb.k >= 1) {
    std::vector<double> e = f.expectations();
    if (pearson(column(0), e) < 0) flip(0);
  }
  if (emb.k >= 2) {
    std::vector<double> v = f.variances();
    if (pearson(column(1), v) < 0) flip(1);
  }
  if (emb.k >= 3) {
    for (int64_t i = 0; i < c.size(); ++i) {
      if (c.conjugate_index(i) != i) {
        if (emb.z(i) < 0) flip(2);
        break;
      }
    }
  }
}

Regression regress(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw InvalidArgument("regression needs two aligned samples of size >= 2");
  double n = double(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0) throw InvalidArgument("regression input has zero variance");
  Regression r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.r2 = syy <= 0 ? 0.0 : (sxy * sxy) / (sxx * syy);
  return r;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw InvalidArgument("correlation needs aligned samples");
  double n = double(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0 || syy <= 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

void LatentEmbedding::save_csv(const std::string& path,
                               const std::string& header) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  if (!header.empty()) out << "# " << header << "\n";
  out << "index";
  static const char* axis[3] = {"X", "Y", "Z"};
  for (int c = 0; c < k; ++c) {
    if (c < 3)
      out << ',' << axis[c];
    else
      out << ",C" << (c + 1);
  }
  out << "\n";
  char buf[40];
  for (int64_t i = 0; i < rows; ++i) {
    out << i;
    for (int c = 0; c < k; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", coord(i, c));
      out << ',' << buf;
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

LatentEmbedding LatentEmbedding::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  LatentEmbedding emb;
  std::string line;
  size_t lineno = 0;
  bool header_done = false;
  std::vector<double> coords;
  int k = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_done) {
      header_done = true;  // column header line
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() < 2) throw ParseError("bad embedding row", lineno, true);
    if (k == 0)
      k = int(vals.size()) - 1;
    else if (int(vals.size()) - 1 != k)
      throw ParseError("ragged embedding row", lineno, true);
    for (size_t c = 1; c < vals.size(); ++c) coords.push_back(vals[c]);
  }
  if (coords.empty()) throw DataError("no coordinates in " + path);
  emb.k = k;
  emb.rows = int64_t(coords.size()) / k;
  emb.coords = std::move(coords);
  return emb;
}

}  // namespace eqlat
