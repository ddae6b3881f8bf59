#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eqlat/corpus.hpp"
#include "eqlat/stone.hpp"

namespace eqlat {

// Low-dimensional coordinates of every equation, produced by projecting the
// column-centered feature matrix onto its top principal directions.
struct LatentEmbedding {
  int64_t rows = 0;  // equations
  int k = 0;         // coordinate components kept
  std::vector<double> coords;  // rows x k, row-major

  // directions live in sample space (length = number of magmas)
  std::vector<std::vector<double>> components;
  std::vector<double> singular_values;           // of the centered matrix
  std::vector<double> explained_variance_ratio;  // eigenvalue / total
  std::vector<double> center;                    // per-column mean

  double coord(int64_t row, int component) const {
    return coords[size_t(row) * size_t(k) + size_t(component)];
  }
  double x(int64_t row) const { return coord(row, 0); }
  double y(int64_t row) const { return coord(row, 1); }
  double z(int64_t row) const { return coord(row, 2); }

  void save_csv(const std::string& path, const std::string& header) const;
  // Coordinates only; components/center stay empty.
  static LatentEmbedding load_csv(const std::string& path);
};

struct PcaOptions {
  int k = 3;                    // coordinates kept (<= 10)
  int spectrum_components = 10;  // eigenpairs reported in the metadata
  double tolerance = 1e-10;      // relative eigenvalue change
  int max_iterations = 10000;
  int threads = 1;
  // Optional involutions that commute with the centered matrix: a pairing of
  // columns (magma <-> opposite) and/or of rows (law <-> conjugate). When
  // given, each converged eigenvector is snapped onto its dominant symmetry
  // class, which disambiguates near-degenerate eigenpairs deterministically.
  std::vector<int32_t> column_involution;
  std::vector<int32_t> row_involution;
};

// Projects rows onto the top-k eigenvectors of the covariance built from the
// column-centered matrix (normalized by the column count). Power iteration
// with deflation on the smaller Gram side.
LatentEmbedding pca_embed(const FeatureMatrix& f, const PcaOptions& opts = {});

// Orients the axes deterministically:
//  - X flipped unless it correlates non-negatively with row expectations,
//  - Y flipped unless it correlates non-negatively with row variances,
//  - Z flipped if the first non-self-conjugate law has a negative Z.
// Idempotent.
void fix_signs(LatentEmbedding& emb, const FeatureMatrix& f, const Corpus& c);

struct Regression {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

// Ordinary least squares of ys on xs. xs must have nonzero variance;
// constant ys give slope 0 and r2 0.
Regression regress(std::span<const double> xs, std::span<const double> ys);

double pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace eqlat
