#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eqlat/corpus.hpp"
#include "eqlat/magma.hpp"
#include "eqlat/term.hpp"

namespace eqlat {

// Exact satisfaction probability as a rational count / N^num_vars.
struct Fraction {
  uint64_t num = 0;
  uint64_t den = 1;
  double value() const { return double(num) / double(den); }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num == b.num && a.den == b.den;
  }
};

// A term compiled to a postorder instruction list, so repeated evaluation
// does no tree walking: op >= 0 pushes assignment[op], -1 applies the table.
class TermProgram {
 public:
  TermProgram() = default;
  explicit TermProgram(const Term& t);

  uint8_t eval(const uint8_t* table, int n, const uint8_t* assignment) const {
    uint8_t stack[24];
    int sp = 0;
    for (int8_t op : code_) {
      if (op >= 0) {
        stack[sp++] = assignment[op];
      } else {
        --sp;
        stack[sp - 1] = table[stack[sp - 1] * n + stack[sp]];
      }
    }
    return stack[0];
  }

 private:
  std::vector<int8_t> code_;
};

// Probability that a uniformly random tuple of elements satisfies the law,
// counted exactly over all N^num_vars assignments. Throws LimitError when
// that tuple count exceeds `tuple_budget`.
Fraction stone_pairing_exact(const Equation& e, const Magma& m,
                             uint64_t tuple_budget = uint64_t(1) << 22);

// Unbiased Monte Carlo estimate of the same probability; deterministic for a
// given seed.
double stone_pairing_mc(const Equation& e, const Magma& m, int64_t samples,
                        uint64_t seed);

// True iff every assignment satisfies the law (pairing == 1); early-exits on
// the first violation, so it has no tuple budget.
bool satisfies(const Magma& m, const Equation& e);
bool satisfies(const Magma& m, const Term& lhs, const Term& rhs);

struct StoneConfig {
  enum class Mode { kAuto, kExact, kMonteCarlo };
  Mode mode = Mode::kAuto;
  uint64_t exact_budget = uint64_t(1) << 22;  // max N^num_vars for exact
  int64_t mc_samples = int64_t(1) << 16;
  uint64_t mc_seed = 0;
  bool store_fractions = true;

  static Mode parse_mode(const std::string& s);
  static std::string mode_name(Mode m);
};

// The multiset of one equation's pairings across a sample, free of the
// sample order. Stored as a sorted value list.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values);
  int64_t weight() const { return int64_t(values_.size()); }
  const std::vector<double>& sorted_values() const { return values_; }
  std::vector<std::pair<double, int64_t>> run_length() const;
  std::vector<int64_t> histogram(int bins) const;
  friend bool operator==(const Spectrum& a, const Spectrum& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
};

// Aligned pairings of two equations across one sample, as an order-free
// multiset of pairs.
class InterferenceSpectrum {
 public:
  explicit InterferenceSpectrum(std::vector<std::pair<double, double>> pairs);
  int64_t weight() const { return int64_t(pairs_.size()); }
  const std::vector<std::pair<double, double>>& sorted_pairs() const {
    return pairs_;
  }
  std::vector<std::tuple<double, double, int64_t>> run_length() const;
  friend bool operator==(const InterferenceSpectrum& a,
                         const InterferenceSpectrum& b) {
    return a.pairs_ == b.pairs_;
  }

 private:
  std::vector<std::pair<double, double>> pairs_;
};

// The equations x magmas matrix of pairings. Values are stored as 32-bit
// floats; rows computed exactly also keep their integer counts, and value()
// then returns the full-precision quotient.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  static FeatureMatrix build(const Corpus& corpus, const MagmaSample& sample,
                             const StoneConfig& config, int threads);

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }

  double value(int64_t row, int64_t col) const;
  std::vector<double> row_values(int64_t row) const;
  bool row_exact(int64_t row) const;
  uint64_t row_denominator(int64_t row) const;
  uint64_t numerator(int64_t row, int64_t col) const;
  bool all_exact() const;
  bool any_exact() const { return !numerators_.empty(); }
  int64_t mc_samples() const { return mc_samples_; }
  int magma_size() const { return magma_size_; }

  Spectrum spectrum(int64_t row) const;
  InterferenceSpectrum interference(int64_t row_a, int64_t row_b) const;
  // Population statistics of one row: (mean, variance).
  std::pair<double, double> expectation_variance(int64_t row) const;
  std::vector<double> expectations() const;
  std::vector<double> variances() const;

  void save(const std::string& path, uint64_t config_hash) const;
  static FeatureMatrix load(const std::string& path,
                            uint64_t* config_hash = nullptr);
  void save_csv(const std::string& path, const std::string& header) const;

 private:
  void check_row(int64_t row) const;

  int64_t rows_ = 0;
  int64_t cols_ = 0;
  int magma_size_ = 0;
  std::vector<float> values_;         // row-major
  std::vector<uint64_t> numerators_;  // empty when no exact rows kept
  std::vector<uint64_t> denominators_;  // per row; 0 marks a Monte Carlo row
  int64_t mc_samples_ = 0;
  uint64_t mc_seed_ = 0;
};

}  // namespace eqlat
