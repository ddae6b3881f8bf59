#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eqlat/term.hpp"

namespace eqlat {

// The full set of canonical laws with a bounded number of operation
// instances, in a deterministic order: (op_total, signature, structure).
// Closed under conjugation. Index 0 is always "x = x".
class Corpus {
 public:
  Corpus() = default;

  // All laws with op_total <= max_ops (0 <= max_ops <= 6).
  static Corpus enumerate(int max_ops);

  // One equation per line, '#' comment lines ignored, line order = index.
  static Corpus load(const std::string& path);
  void save(const std::string& path,
            const std::string& extra_header = "") const;

  int64_t size() const { return int64_t(equations_.size()); }
  const Equation& at(int64_t index) const;
  std::optional<int64_t> index_of(const Equation& e) const;
  int64_t conjugate_index(int64_t index) const;
  bool self_conjugate(int64_t index) const {
    return conjugate_index(index) == index;
  }
  int64_t self_conjugate_count() const;
  std::map<std::pair<int, int>, int64_t> signature_histogram() const;
  int max_ops() const { return max_ops_; }

  // Sidecar mapping to an external numbering scheme, one pair per line:
  //   <equation text> <-> <number>
  void load_external_numbering(const std::string& path);
  std::optional<int64_t> external_number(int64_t index) const;
  std::optional<int64_t> index_of_external(int64_t number) const;
  bool has_external_numbering() const { return !external_to_index_.empty(); }

 private:
  void build_index();

  std::vector<Equation> equations_;
  std::unordered_map<Equation, int64_t, EquationHash> index_;
  std::vector<int64_t> conjugate_index_;  // lazy, built with index
  std::vector<int64_t> external_;         // -1 when unmapped
  std::unordered_map<int64_t, int64_t> external_to_index_;
  int max_ops_ = 0;
};

}  // namespace eqlat
