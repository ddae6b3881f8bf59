#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eqlat/magma.hpp"
#include "eqlat/term.hpp"

namespace eqlat {

// Maps every variable of a source equation to a term over the target
// equation's variables.
struct Substitution {
  std::map<int, Term> mapping;
};

// Replaces variables in t by their images; every variable of t must be
// mapped.
Term substitute_term(const Term& t, const std::map<int, Term>& mapping);

// Simultaneous substitution on both sides; the substitution must be total on
// the equation's variables and must not map anything else.
std::pair<Term, Term> apply_substitution(const Term& lhs, const Term& rhs,
                                         const Substitution& s);

// apply first, then second (images of `first` rewritten by `second`).
Substitution compose(const Substitution& first, const Substitution& second);

struct ProofLimits {
  int depth = 8;           // rewrite steps per search side
  int term_size_cap = 32;  // max nodes in an intermediate term
  int64_t max_expansions = 200000;
};

// A claimed entailment between two universally quantified equations,
// witnessed by a list of substitutions. Each substituted instance of the
// source is a universally valid equation over the target's variables; the
// verifier uses those instances as rewrite rules to connect the target's two
// sides.
class HerbrandProof {
 public:
  HerbrandProof() = default;
  HerbrandProof(RawEquation source, RawEquation target,
                std::vector<Substitution> steps);

  // Text format, one entry per line:
  //   source: u = v*(u*v)
  //   target: x = (y*z)*(x*(y*z))
  //   step: u -> x, v -> y*z
  //   limits: depth=8 size=32        (optional)
  static HerbrandProof parse(const std::string& text);
  static HerbrandProof load(const std::string& path);

  const RawEquation& source() const { return source_; }
  const RawEquation& target() const { return target_; }
  const std::vector<Substitution>& steps() const { return steps_; }
  const ProofLimits& limits() const { return limits_; }
  void set_limits(const ProofLimits& l) { limits_ = l; }

  // The substituted instances of the source, in step order.
  std::vector<std::pair<Term, Term>> instances() const;

  friend bool operator==(const HerbrandProof& a, const HerbrandProof& b);

 private:
  void check() const;

  RawEquation source_, target_;
  std::vector<Substitution> steps_;
  ProofLimits limits_;
};

struct RewriteStep {
  Term before, after;
  int rule = 0;               // premise instance index
  bool left_to_right = true;  // rule orientation used
  std::string position;       // path of 'L'/'R' from the root
  std::map<int, Term> bindings;  // rule variable -> bound term
};

struct VerifyResult {
  bool proved = false;
  std::vector<RewriteStep> trace;  // connects target lhs to target rhs
  int64_t expanded = 0;
  std::string message;
};

// Sound, bounded verification: `proved` comes with a replayable trace;
// not-found-within-bounds is not a refutation.
VerifyResult verify(const HerbrandProof& p);

// Re-checks a trace step by step against the proof's premise instances.
bool replay_trace(const HerbrandProof& p, const std::vector<RewriteStep>& trace);

struct SemanticCheck {
  bool consistent = true;
  int64_t counterexample = -1;  // sample index of a refuting magma
};

// Scans the sample for a magma satisfying the source but not the target;
// such a magma refutes the claimed entailment.
SemanticCheck verify_semantically(const HerbrandProof& p,
                                  const MagmaSample& sample);

}  // namespace eqlat
