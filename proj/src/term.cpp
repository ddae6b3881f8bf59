#include "eqlat/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "eqlat/error.hpp"

namespace eqlat {

struct Term::Node {
  int16_t var;  // >= 0 leaf, -1 application
  int16_t ops;
  uint32_t vars;
  Term lhs, rhs;
};

Term Term::var(int index) {
  if (index < 0 || index >= 32)
    throw InvalidArgument("variable index out of range: " +
                          std::to_string(index));
  auto n = std::make_shared<Node>();
  n->var = int16_t(index);
  n->ops = 0;
  n->vars = 1u << index;
  return Term(std::move(n));
}

Term Term::app(Term left, Term right) {
  if (!left.valid() || !right.valid())
    throw InvalidArgument("application of an invalid term");
  auto n = std::make_shared<Node>();
  n->var = -1;
  n->ops = int16_t(left.op_count() + right.op_count() + 1);
  n->vars = left.var_mask() | right.var_mask();
  n->lhs = std::move(left);
  n->rhs = std::move(right);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->var >= 0; }
int Term::var_index() const { return node_->var; }
const Term& Term::left() const { return node_->lhs; }
const Term& Term::right() const { return node_->rhs; }
int Term::op_count() const { return node_->ops; }
uint32_t Term::var_mask() const { return node_->vars; }
int Term::max_var() const { return 31 - std::countl_zero(node_->vars); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.node_->var != b.node_->var || a.node_->ops != b.node_->ops ||
      a.node_->vars != b.node_->vars)
    return false;
  if (a.is_var()) return true;
  return a.left() == b.left() && a.right() == b.right();
}

Term mirror(const Term& t) {
  if (t.is_var()) return t;
  return Term::app(mirror(t.right()), mirror(t.left()));
}

std::string var_name(int index) {
  static const char* names[6] = {"x", "y", "z", "w", "u", "v"};
  if (index >= 0 && index < 6) return names[index];
  return "x" + std::to_string(index);
}

namespace {

void print_rec(const Term& t, bool top, std::string& out) {
  if (t.is_var()) {
    out += var_name(t.var_index());
    return;
  }
  if (!top) out += '(';
  print_rec(t.left(), false, out);
  out += '*';
  print_rec(t.right(), false, out);
  if (!top) out += ')';
}

// --- structural keys ------------------------------------------------------
//
// Terms are encoded as preorder byte strings: variable i -> 0x02 + i,
// application -> 0x7f. Lexicographic comparison of these strings (after an
// op-count byte) is the structural order used for canonical side ordering
// and for the corpus order. Leaves sort before applications.

constexpr char kAppByte = 0x7f;

void enc_abs(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += char(0x02 + t.var_index());
    return;
  }
  out += kAppByte;
  enc_abs(t.left(), out);
  enc_abs(t.right(), out);
}

void enc_rank(const Term& t, std::string& out, std::array<int, 32>& rank,
              int& next) {
  if (t.is_var()) {
    int& r = rank[size_t(t.var_index())];
    if (r < 0) r = next++;
    out += char(0x02 + r);
    return;
  }
  out += kAppByte;
  enc_rank(t.left(), out, rank, next);
  enc_rank(t.right(), out, rank, next);
}

// (op_count, rename-invariant preorder string)
std::string side_key(const Term& t) {
  std::string out;
  out += char(t.op_count());
  std::array<int, 32> rank;
  rank.fill(-1);
  int next = 0;
  enc_rank(t, out, rank, next);
  return out;
}

Term relabel_rec(const Term& t, std::array<int, 32>& map, int& next) {
  if (t.is_var()) {
    int& m = map[size_t(t.var_index())];
    if (m < 0) m = next++;
    return Term::var(m);
  }
  Term l = relabel_rec(t.left(), map, next);
  Term r = relabel_rec(t.right(), map, next);
  return Term::app(std::move(l), std::move(r));
}

// Dense relabeling by first occurrence, scanning lhs then rhs.
std::pair<Term, Term> relabel_pair(const Term& lhs, const Term& rhs) {
  std::array<int, 32> map;
  map.fill(-1);
  int next = 0;
  Term l = relabel_rec(lhs, map, next);
  Term r = relabel_rec(rhs, map, next);
  return {std::move(l), std::move(r)};
}

std::string pair_enc(const std::pair<Term, Term>& p) {
  std::string s;
  enc_abs(p.first, s);
  s += '\x01';
  enc_abs(p.second, s);
  return s;
}

}  // namespace

std::string print_term(const Term& t) {
  if (!t.valid()) throw InvalidArgument("printing an invalid term");
  std::string out;
  print_rec(t, true, out);
  return out;
}

// --- parsing ----------------------------------------------------------------

namespace {

struct Token {
  enum Kind { kName, kStar, kLParen, kRParen, kEquals, kEnd } kind;
  std::string text;
  size_t offset;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({Token::kLParen, "(", i});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::kRParen, ")", i});
      ++i;
    } else if (c == '*') {
      out.push_back({Token::kStar, "*", i});
      ++i;
    } else if (c == '=') {
      out.push_back({Token::kEquals, "=", i});
      ++i;
    } else if (c == 0xe2 && i + 2 < s.size()) {
      // UTF-8 diamond operators U+22C4 and U+25C7
      unsigned char b1 = static_cast<unsigned char>(s[i + 1]);
      unsigned char b2 = static_cast<unsigned char>(s[i + 2]);
      if ((b1 == 0x8b && b2 == 0x84) || (b1 == 0x97 && b2 == 0x87)) {
        out.push_back({Token::kStar, "*", i});
        i += 3;
      } else {
        throw ParseError("unexpected character", i);
      }
    } else if (std::isalpha(c)) {
      size_t start = i;
      std::string name(1, char(c));
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        name += s[i];
        ++i;
      }
      out.push_back({Token::kName, name, start});
    } else {
      throw ParseError("unexpected character", i);
    }
  }
  out.push_back({Token::kEnd, "", s.size()});
  return out;
}

// Fixed alphabet first; leftover names get the smallest free indices in
// order of first occurrence.
std::map<std::string, int> assign_variables(const std::vector<Token>& toks) {
  std::map<std::string, int> result;
  uint32_t taken = 0;
  auto fixed_index = [](const std::string& name) -> int {
    static const std::map<std::string, int> alphabet = {
        {"x", 0}, {"y", 1}, {"z", 2}, {"w", 3}, {"u", 4}, {"v", 5}};
    auto it = alphabet.find(name);
    if (it != alphabet.end()) return it->second;
    if (name.size() > 1 && name[0] == 'x') {
      int idx = 0;
      for (size_t i = 1; i < name.size(); ++i) idx = idx * 10 + (name[i] - '0');
      return idx;
    }
    return -1;
  };
  for (const auto& t : toks) {
    if (t.kind != Token::kName) continue;
    int fi = fixed_index(t.text);
    if (fi >= 0) {
      if (fi >= 32) throw ParseError("variable index too large", t.offset);
      result[t.text] = fi;
      taken |= 1u << fi;
    }
  }
  for (const auto& t : toks) {
    if (t.kind != Token::kName) continue;
    if (result.count(t.text)) continue;
    int free = std::countr_one(taken);
    if (free >= 32) throw ParseError("too many distinct variables", t.offset);
    result[t.text] = free;
    taken |= 1u << free;
  }
  return result;
}

class TermParser {
 public:
  TermParser(const std::vector<Token>& toks, const std::map<std::string, int>& vars)
      : toks_(toks), vars_(vars) {}

  // operand [ '*' operand ]; a second '*' at the same level is ambiguous.
  Term parse_expr() {
    Term t = parse_operand();
    if (peek().kind == Token::kStar) {
      next();
      Term r = parse_operand();
      if (peek().kind == Token::kStar)
        throw ParseError("ambiguous application: parenthesize explicitly",
                         peek().offset);
      t = Term::app(std::move(t), std::move(r));
    }
    return t;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

 private:
  Term parse_operand() {
    const Token& t = peek();
    if (t.kind == Token::kName) {
      next();
      return Term::var(vars_.at(t.text));
    }
    if (t.kind == Token::kLParen) {
      next();
      Term inner = parse_expr();
      if (peek().kind != Token::kRParen)
        throw ParseError("unbalanced parentheses", peek().offset);
      next();
      return inner;
    }
    throw ParseError("missing operand", t.offset);
  }

  const std::vector<Token>& toks_;
  const std::map<std::string, int>& vars_;
  size_t pos_ = 0;
};

}  // namespace

Term parse_term(const std::string& text) {
  auto toks = tokenize(text);
  auto vars = assign_variables(toks);
  TermParser p(toks, vars);
  Term t = p.parse_expr();
  if (p.peek().kind != Token::kEnd)
    throw ParseError("unexpected trailing input", p.peek().offset);
  return t;
}

RawEquation parse_equation_raw(const std::string& text) {
  auto toks = tokenize(text);
  auto vars = assign_variables(toks);
  TermParser p(toks, vars);
  Term lhs = p.parse_expr();
  if (p.peek().kind != Token::kEquals)
    throw ParseError("expected '=' between the two sides", p.peek().offset);
  p.next();
  Term rhs = p.parse_expr();
  if (p.peek().kind != Token::kEnd)
    throw ParseError("unexpected trailing input", p.peek().offset);
  RawEquation out;
  out.lhs = std::move(lhs);
  out.rhs = std::move(rhs);
  // keep only names that actually occur
  uint32_t used = out.lhs.var_mask() | out.rhs.var_mask();
  for (const auto& [name, idx] : vars)
    if (used & (1u << idx)) out.var_of_name[name] = idx;
  return out;
}

// --- Equation ---------------------------------------------------------------

Equation::Equation(const Term& lhs, const Term& rhs) {
  if (!lhs.valid() || !rhs.valid())
    throw InvalidArgument("equation side is not a valid term");
  std::string ka = side_key(lhs);
  std::string kb = side_key(rhs);
  std::pair<Term, Term> canon;
  if (ka < kb) {
    canon = relabel_pair(lhs, rhs);
  } else if (kb < ka) {
    canon = relabel_pair(rhs, lhs);
  } else {
    // Same rename-invariant shape on both sides: the relabeled results can
    // still differ (e.g. x*y = y*z vs x*y = z*x), so take the smaller.
    auto c1 = relabel_pair(lhs, rhs);
    auto c2 = relabel_pair(rhs, lhs);
    canon = pair_enc(c1) <= pair_enc(c2) ? c1 : c2;
  }
  lhs_ = std::move(canon.first);
  rhs_ = std::move(canon.second);
  num_vars_ = std::popcount(lhs_.var_mask() | rhs_.var_mask());
  key_.clear();
  key_ += char(op_total());
  key_ += char(lhs_.op_count());
  key_ += char(rhs_.op_count());
  enc_abs(lhs_, key_);
  key_ += '\x01';
  enc_abs(rhs_, key_);
}

Equation Equation::parse(const std::string& text) {
  RawEquation raw = parse_equation_raw(text);
  return Equation(raw.lhs, raw.rhs);
}

std::string Equation::text() const {
  return print_term(lhs_) + " = " + print_term(rhs_);
}

Equation conjugate(const Equation& e) {
  return Equation(mirror(e.lhs()), mirror(e.rhs()));
}

EquationMetrics metrics(const Equation& e) {
  return {e.signature(), e.num_vars(), e.op_total()};
}

}  // namespace eqlat
