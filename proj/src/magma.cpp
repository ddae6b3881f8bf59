#include "eqlat/magma.hpp"

#include <fstream>
#include <sstream>

#include "eqlat/error.hpp"
#include "eqlat/util.hpp"

namespace eqlat {

Magma::Magma(int size, std::vector<uint8_t> table)
    : size_(size), table_(std::move(table)) {
  if (size < 1 || size > 16)
    throw InvalidArgument("magma size must be in [1, 16], got " +
                          std::to_string(size));
  if (table_.size() != size_t(size) * size_t(size))
    throw InvalidArgument("magma table has wrong length");
  for (uint8_t e : table_)
    if (e >= size) throw InvalidArgument("magma table entry out of range");
}

Magma Magma::random(int size, uint64_t seed) {
  if (size < 1 || size > 16)
    throw InvalidArgument("magma size must be in [1, 16], got " +
                          std::to_string(size));
  SplitMix64 rng(seed);
  std::vector<uint8_t> table(size_t(size) * size_t(size));
  for (auto& e : table) e = uint8_t(rng.next_below(uint64_t(size)));
  return Magma(size, std::move(table));
}

Magma Magma::opposite() const {
  std::vector<uint8_t> t(table_.size());
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      t[size_t(b * size_ + a)] = table_[size_t(a * size_ + b)];
  return Magma(size_, std::move(t));
}

int eval_term(const Magma& m, const Term& t,
              std::span<const uint8_t> assignment) {
  if (t.is_var()) {
    int v = t.var_index();
    if (size_t(v) >= assignment.size())
      throw InvalidArgument("missing variable binding for " + var_name(v));
    uint8_t e = assignment[size_t(v)];
    if (e >= m.size()) throw InvalidArgument("assignment value out of range");
    return e;
  }
  int a = eval_term(m, t.left(), assignment);
  int b = eval_term(m, t.right(), assignment);
  return m.at(a, b);
}

MagmaSample MagmaSample::generate(int64_t n, int magma_size, uint64_t seed,
                                  bool symmetric) {
  if (n < 1) throw InvalidArgument("sample size must be >= 1");
  if (magma_size < 1 || magma_size > 16)
    throw InvalidArgument("magma size must be in [1, 16]");
  if (symmetric && n % 2 != 0)
    throw InvalidArgument("a symmetric sample needs an even count");
  MagmaSample s;
  s.magma_size_ = magma_size;
  s.seed_ = seed;
  s.symmetric_ = symmetric;
  s.magmas_.reserve(size_t(n));
  if (symmetric) {
    // position 2i holds draw i, position 2i+1 its opposite
    for (int64_t i = 0; i < n / 2; ++i) {
      Magma m = Magma::random(magma_size, substream(seed, uint64_t(i)));
      Magma op = m.opposite();
      s.magmas_.push_back(std::move(m));
      s.magmas_.push_back(std::move(op));
    }
  } else {
    for (int64_t i = 0; i < n; ++i)
      s.magmas_.push_back(
          Magma::random(magma_size, substream(seed, uint64_t(i))));
  }
  return s;
}

MagmaSample MagmaSample::from_magmas(std::vector<Magma> magmas) {
  if (magmas.empty()) throw InvalidArgument("empty magma list");
  int n = magmas[0].size();
  for (const auto& m : magmas)
    if (m.size() != n)
      throw InvalidArgument("all magmas in a sample must share one size");
  MagmaSample s;
  s.magma_size_ = n;
  s.magmas_ = std::move(magmas);
  return s;
}

const Magma& MagmaSample::at(int64_t index) const {
  if (index < 0 || index >= size())
    throw InvalidArgument("sample index out of range: " +
                          std::to_string(index));
  return magmas_[size_t(index)];
}

std::vector<int32_t> MagmaSample::opposite_pairing() const {
  if (!symmetric_) return {};
  std::vector<int32_t> p(size_t(size()));
  for (int64_t i = 0; i + 1 < size(); i += 2) {
    p[size_t(i)] = int32_t(i + 1);
    p[size_t(i + 1)] = int32_t(i);
  }
  return p;
}

void MagmaSample::save(const std::string& path,
                       const std::string& extra_header) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "# eqlat magma sample n=" << size() << " N=" << magma_size_
      << " seed=" << seed_ << " symmetric=" << (symmetric_ ? 1 : 0) << "\n";
  if (!extra_header.empty()) out << "# " << extra_header << "\n";
  for (const auto& m : magmas_) {
    out << m.size() << "\n";
    for (int a = 0; a < m.size(); ++a) {
      for (int b = 0; b < m.size(); ++b) {
        if (b) out << ' ';
        out << int(m.at(a, b));
      }
      out << "\n";
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

MagmaSample MagmaSample::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  MagmaSample s;
  std::string line;
  size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line);
      std::string tok;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        try {
          if (key == "seed") s.seed_ = std::stoull(val);
          if (key == "symmetric") s.symmetric_ = std::stoi(val) != 0;
          if (key == "N") header_seen = true;
        } catch (...) {
          throw ParseError("bad sample header", lineno, true);
        }
      }
      continue;
    }
    int n = 0;
    try {
      n = std::stoi(line);
    } catch (...) {
      throw ParseError("expected a magma size line", lineno, true);
    }
    if (n < 1 || n > 16) throw ParseError("magma size out of range", lineno, true);
    std::vector<uint8_t> table;
    table.reserve(size_t(n) * size_t(n));
    for (int r = 0; r < n; ++r) {
      if (!std::getline(in, line))
        throw ParseError("truncated magma table", lineno, true);
      ++lineno;
      std::istringstream row(line);
      for (int c = 0; c < n; ++c) {
        int v;
        if (!(row >> v) || v < 0 || v >= n)
          throw ParseError("bad table entry", lineno, true);
        table.push_back(uint8_t(v));
      }
    }
    s.magmas_.emplace_back(n, std::move(table));
    if (s.magma_size_ == 0)
      s.magma_size_ = n;
    else if (s.magma_size_ != n)
      throw DataError("mixed magma sizes in sample file " + path);
  }
  (void)header_seen;
  if (s.magmas_.empty()) throw DataError("no magmas in " + path);
  return s;
}

}  // namespace eqlat
