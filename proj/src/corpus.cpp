#include "eqlat/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "eqlat/error.hpp"

namespace eqlat {

namespace {

// All binary tree shapes with `ops` applications; leaves are var(0)
// placeholders to be relabeled.
std::vector<std::vector<Term>> tree_shapes(int max_ops) {
  std::vector<std::vector<Term>> shapes(size_t(max_ops) + 1);
  shapes[0] = {Term::var(0)};
  for (int k = 1; k <= max_ops; ++k)
    for (int i = 0; i < k; ++i)
      for (const Term& l : shapes[size_t(i)])
        for (const Term& r : shapes[size_t(k - 1 - i)])
          shapes[size_t(k)].push_back(Term::app(l, r));
  return shapes;
}

Term label_leaves(const Term& shape, const std::vector<int>& labels,
                  size_t& pos) {
  if (shape.is_var()) return Term::var(labels[pos++]);
  Term l = label_leaves(shape.left(), labels, pos);
  Term r = label_leaves(shape.right(), labels, pos);
  return Term::app(std::move(l), std::move(r));
}

// Restricted growth strings of the given length: every labeling of the
// leaves, up to renaming, exactly once.
void for_each_rgs(int length, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> labels(size_t(length), 0);
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == length) {
      fn(labels);
      return;
    }
    for (int v = 0; v <= used; ++v) {
      labels[size_t(pos)] = v;
      rec(pos + 1, v == used ? used + 1 : used);
    }
  };
  rec(0, 0);
}

}  // namespace

Corpus Corpus::enumerate(int max_ops) {
  if (max_ops < 0 || max_ops > 6)
    throw InvalidArgument("max_ops must be in [0, 6], got " +
                          std::to_string(max_ops));
  auto shapes = tree_shapes(max_ops);
  std::unordered_set<Equation, EquationHash> seen;
  std::vector<Equation> eqs;
  for (int total = 0; total <= max_ops; ++total) {
    for (int a = 0; 2 * a <= total; ++a) {
      int b = total - a;
      for (const Term& ls : shapes[size_t(a)]) {
        for (const Term& rs : shapes[size_t(b)]) {
          for_each_rgs(total + 2, [&](const std::vector<int>& labels) {
            size_t pos = 0;
            Term lhs = label_leaves(ls, labels, pos);
            Term rhs = label_leaves(rs, labels, pos);
            Equation e(lhs, rhs);
            if (seen.insert(e).second) eqs.push_back(std::move(e));
          });
        }
      }
    }
  }
  std::sort(eqs.begin(), eqs.end());
  Corpus c;
  c.equations_ = std::move(eqs);
  c.max_ops_ = max_ops;
  c.build_index();
  return c;
}

void Corpus::build_index() {
  index_.clear();
  index_.reserve(equations_.size() * 2);
  for (int64_t i = 0; i < size(); ++i) {
    auto [it, fresh] = index_.emplace(equations_[size_t(i)], i);
    if (!fresh)
      throw DataError("duplicate equation in corpus: " +
                      equations_[size_t(i)].text());
  }
  conjugate_index_.assign(equations_.size(), -1);
  for (int64_t i = 0; i < size(); ++i) {
    if (conjugate_index_[size_t(i)] >= 0) continue;
    Equation c = conjugate(equations_[size_t(i)]);
    auto it = index_.find(c);
    if (it == index_.end())
      throw DataError("corpus is not closed under conjugation at " +
                      equations_[size_t(i)].text());
    conjugate_index_[size_t(i)] = it->second;
    conjugate_index_[size_t(it->second)] = i;
  }
  external_.assign(equations_.size(), -1);
  external_to_index_.clear();
}

const Equation& Corpus::at(int64_t index) const {
  if (index < 0 || index >= size())
    throw InvalidArgument("corpus index out of range: " +
                          std::to_string(index));
  return equations_[size_t(index)];
}

std::optional<int64_t> Corpus::index_of(const Equation& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int64_t Corpus::conjugate_index(int64_t index) const {
  if (index < 0 || index >= size())
    throw InvalidArgument("corpus index out of range: " +
                          std::to_string(index));
  return conjugate_index_[size_t(index)];
}

int64_t Corpus::self_conjugate_count() const {
  int64_t n = 0;
  for (int64_t i = 0; i < size(); ++i)
    if (conjugate_index_[size_t(i)] == i) ++n;
  return n;
}

std::map<std::pair<int, int>, int64_t> Corpus::signature_histogram() const {
  std::map<std::pair<int, int>, int64_t> h;
  for (const auto& e : equations_) ++h[e.signature()];
  return h;
}

void Corpus::save(const std::string& path,
                  const std::string& extra_header) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "# eqlat corpus max_ops=" << max_ops_ << " count=" << size() << "\n";
  if (!extra_header.empty()) out << "# " << extra_header << "\n";
  for (const auto& e : equations_) out << e.text() << "\n";
  if (!out) throw IoError("write failed: " + path);
}

Corpus Corpus::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  Corpus c;
  std::string line;
  size_t lineno = 0;
  int max_ops = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    Equation e;
    try {
      e = Equation::parse(line);
    } catch (const ParseError& pe) {
      throw ParseError(std::string("bad equation in ") + path + ": " +
                           pe.what(),
                       lineno, true);
    }
    max_ops = std::max(max_ops, e.op_total());
    c.equations_.push_back(std::move(e));
  }
  c.max_ops_ = max_ops;
  c.build_index();
  return c;
}

void Corpus::load_external_numbering(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<int64_t> numbers(equations_.size(), -1);
  std::unordered_map<int64_t, int64_t> reverse;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    size_t sep = line.find("<->");
    size_t sep_len = 3;
    if (sep == std::string::npos) {
      sep = line.find("↔");  // also accept the arrow itself
      sep_len = 3;
    }
    if (sep == std::string::npos)
      throw ParseError("missing '<->' separator", lineno, true);
    std::string eq_text = line.substr(0, sep);
    std::string num_text = line.substr(sep + sep_len);
    Equation e;
    try {
      e = Equation::parse(eq_text);
    } catch (const ParseError& pe) {
      throw ParseError(std::string("bad equation in numbering file: ") +
                           pe.what(),
                       lineno, true);
    }
    int64_t number = 0;
    try {
      number = std::stoll(num_text);
    } catch (...) {
      throw ParseError("mapped number is not an integer", lineno, true);
    }
    auto idx = index_of(e);
    if (!idx)
      throw DataError("equation not in corpus (line " + std::to_string(lineno) +
                      "): " + e.text());
    if (reverse.count(number))
      throw DataError("duplicate external number " + std::to_string(number) +
                      " (line " + std::to_string(lineno) + ")");
    if (numbers[size_t(*idx)] >= 0)
      throw DataError("equation mapped twice (line " + std::to_string(lineno) +
                      "): " + e.text());
    numbers[size_t(*idx)] = number;
    reverse[number] = *idx;
  }
  external_ = std::move(numbers);
  external_to_index_ = std::move(reverse);
}

std::optional<int64_t> Corpus::external_number(int64_t index) const {
  if (index < 0 || index >= size())
    throw InvalidArgument("corpus index out of range");
  int64_t n = external_.empty() ? -1 : external_[size_t(index)];
  if (n < 0) return std::nullopt;
  return n;
}

std::optional<int64_t> Corpus::index_of_external(int64_t number) const {
  auto it = external_to_index_.find(number);
  if (it == external_to_index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace eqlat
