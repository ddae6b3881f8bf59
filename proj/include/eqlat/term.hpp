#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace eqlat {

// A magma expression: a variable leaf or an application of the (single)
// binary operation to two subterms. Immutable; cheap to copy.
//
// Variable indices are limited to [0, 32).
class Term {
 public:
  Term() = default;  // invalid placeholder, only for containers

  static Term var(int index);
  static Term app(Term left, Term right);

  bool valid() const noexcept { return node_ != nullptr; }
  bool is_var() const;
  int var_index() const;     // leaf only
  const Term& left() const;  // application only
  const Term& right() const;

  int op_count() const;       // number of application nodes
  uint32_t var_mask() const;  // bit i set iff variable i occurs
  int num_vars() const { return std::popcount(var_mask()); }
  int max_var() const;  // largest occurring index

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Swaps the arguments of every application: mirror(l*r) = mirror(r)*mirror(l).
Term mirror(const Term& t);

// Printed name of a variable index: x y z w u v x6 x7 ...
std::string var_name(int index);

// Renders a term using `*` for the operation. Nested applications are fully
// parenthesized, the top-level one is not: app(app(x,y),z) -> "(x*y)*z".
std::string print_term(const Term& t);

// Parses the term grammar accepted everywhere in the project:
//   term    := operand | operand '*' operand
//   operand := variable | '(' term ')'
// The operation is non-associative, so "x*y*z" is rejected as ambiguous.
// `*`, `⋄` and `◇` are interchangeable operator spellings on input.
// Variable tokens x y z w u v map to indices 0..5, xN maps to N, any other
// letter (optionally with a digit suffix) is assigned the smallest free
// index in order of first occurrence.
Term parse_term(const std::string& text);

// An equation parsed as written, before canonicalization. Keeps the mapping
// from variable names used in the input to the indices inside the terms.
struct RawEquation {
  Term lhs, rhs;
  std::map<std::string, int> var_of_name;
};

// Parses "LHS = RHS" with one variable scope across both sides.
RawEquation parse_equation_raw(const std::string& text);

// An equational law, stored in canonical form:
//  - sides ordered so (op_count, structural key) of lhs <= that of rhs,
//  - variables relabeled densely by first occurrence scanning lhs then rhs.
// Two Equation values are equal iff they denote the same law up to variable
// renaming and symmetry of equality.
class Equation {
 public:
  Equation() = default;
  Equation(const Term& lhs, const Term& rhs);  // canonicalizes

  static Equation parse(const std::string& text);

  bool valid() const noexcept { return lhs_.valid(); }
  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }
  std::pair<int, int> signature() const {
    return {lhs_.op_count(), rhs_.op_count()};
  }
  int op_total() const { return lhs_.op_count() + rhs_.op_count(); }
  int num_vars() const { return num_vars_; }

  std::string text() const;  // "lhs = rhs"

  // Total-order key: (op_total, signature, structure). Stable across runs.
  const std::string& key() const { return key_; }

  friend bool operator==(const Equation& a, const Equation& b) {
    return a.key_ == b.key_;
  }
  friend bool operator!=(const Equation& a, const Equation& b) {
    return !(a == b);
  }
  friend bool operator<(const Equation& a, const Equation& b) {
    return a.key_ < b.key_;
  }

 private:
  Term lhs_, rhs_;
  int num_vars_ = 0;
  std::string key_;
};

struct EquationHash {
  std::size_t operator()(const Equation& e) const noexcept {
    return std::hash<std::string>{}(e.key());
  }
};

// Mirrors both sides and re-canonicalizes. An involution; its fixed points
// are the self-conjugate laws.
Equation conjugate(const Equation& e);

struct EquationMetrics {
  std::pair<int, int> signature;
  int num_vars;
  int op_total;
};

EquationMetrics metrics(const Equation& e);

}  // namespace eqlat
