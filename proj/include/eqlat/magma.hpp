#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eqlat/term.hpp"

namespace eqlat {

// A finite magma on {0..N-1}: an N x N multiplication table, row = left
// argument. N is capped at 16 so a table stays at most 256 bytes.
class Magma {
 public:
  Magma() = default;
  Magma(int size, std::vector<uint8_t> table);

  // Table filled from SplitMix64(seed); entry (a,b) drawn row-major.
  static Magma random(int size, uint64_t seed);

  int size() const { return size_; }
  uint8_t at(int a, int b) const { return table_[size_t(a * size_ + b)]; }
  const std::vector<uint8_t>& table() const { return table_; }
  const uint8_t* data() const { return table_.data(); }

  // Same carrier, arguments swapped: a ⋄op b = b ⋄ a (transposed table).
  Magma opposite() const;

  friend bool operator==(const Magma& a, const Magma& b) {
    return a.size_ == b.size_ && a.table_ == b.table_;
  }

 private:
  int size_ = 0;
  std::vector<uint8_t> table_;
};

// Evaluates a term under a variable assignment by recursive table lookup.
// assignment[i] is the element bound to variable i.
int eval_term(const Magma& m, const Term& t,
              std::span<const uint8_t> assignment);

// A deterministic, seeded list of magmas of one size. When `symmetric`,
// magmas come in adjacent (A, A_opposite) pairs from n/2 independent draws.
class MagmaSample {
 public:
  MagmaSample() = default;

  static MagmaSample generate(int64_t n, int magma_size, uint64_t seed,
                              bool symmetric);

  static MagmaSample load(const std::string& path);
  void save(const std::string& path,
            const std::string& extra_header = "") const;

  int64_t size() const { return int64_t(magmas_.size()); }
  int magma_size() const { return magma_size_; }
  const Magma& at(int64_t index) const;
  uint64_t seed() const { return seed_; }
  bool symmetric() const { return symmetric_; }

  // Column involution pairing each magma with its opposite; empty when the
  // sample is not symmetric.
  std::vector<int32_t> opposite_pairing() const;

  // For building ad-hoc samples (tests, satisfaction scans).
  static MagmaSample from_magmas(std::vector<Magma> magmas);

 private:
  std::vector<Magma> magmas_;
  int magma_size_ = 0;
  uint64_t seed_ = 0;
  bool symmetric_ = false;
};

}  // namespace eqlat
