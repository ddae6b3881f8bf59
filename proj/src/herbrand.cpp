#include "eqlat/herbrand.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "eqlat/error.hpp"
#include "eqlat/stone.hpp"

namespace eqlat {

Term substitute_term(const Term& t, const std::map<int, Term>& mapping) {
  if (t.is_var()) {
    auto it = mapping.find(t.var_index());
    if (it == mapping.end())
      throw InvalidArgument("unbound variable " + var_name(t.var_index()));
    return it->second;
  }
  return Term::app(substitute_term(t.left(), mapping),
                   substitute_term(t.right(), mapping));
}

std::pair<Term, Term> apply_substitution(const Term& lhs, const Term& rhs,
                                         const Substitution& s) {
  uint32_t used = lhs.var_mask() | rhs.var_mask();
  for (const auto& [v, img] : s.mapping) {
    if (v < 0 || v >= 32 || !(used & (1u << v)))
      throw InvalidArgument("substitution maps a variable not in the equation: " +
                            var_name(v));
    (void)img;
  }
  for (int v = 0; v < 32; ++v)
    if ((used & (1u << v)) && !s.mapping.count(v))
      throw InvalidArgument("unbound variable " + var_name(v));
  return {substitute_term(lhs, s.mapping), substitute_term(rhs, s.mapping)};
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [v, img] : first.mapping)
    out.mapping[v] = substitute_term(img, second.mapping);
  return out;
}

HerbrandProof::HerbrandProof(RawEquation source, RawEquation target,
                             std::vector<Substitution> steps)
    : source_(std::move(source)),
      target_(std::move(target)),
      steps_(std::move(steps)) {
  check();
}

void HerbrandProof::check() const {
  if (!source_.lhs.valid() || !target_.lhs.valid())
    throw InvalidArgument("proof needs a source and a target equation");
  if (steps_.empty()) throw InvalidArgument("proof has no substitution steps");
  uint32_t src_vars = source_.lhs.var_mask() | source_.rhs.var_mask();
  uint32_t tgt_vars = target_.lhs.var_mask() | target_.rhs.var_mask();
  for (size_t i = 0; i < steps_.size(); ++i) {
    uint32_t mapped = 0;
    for (const auto& [v, img] : steps_[i].mapping) {
      if (!(src_vars & (1u << v)))
        throw InvalidArgument("step " + std::to_string(i + 1) +
                              " maps a variable not in the source: " +
                              var_name(v));
      if (img.var_mask() & ~tgt_vars)
        throw InvalidArgument("step " + std::to_string(i + 1) +
                              " image uses a variable outside the target");
      mapped |= 1u << v;
    }
    if (mapped != src_vars)
      throw InvalidArgument("step " + std::to_string(i + 1) +
                            " is not total on the source variables");
  }
}

std::vector<std::pair<Term, Term>> HerbrandProof::instances() const {
  std::vector<std::pair<Term, Term>> out;
  out.reserve(steps_.size());
  for (const auto& s : steps_)
    out.push_back(apply_substitution(source_.lhs, source_.rhs, s));
  return out;
}

bool operator==(const HerbrandProof& a, const HerbrandProof& b) {
  if (!(a.source_.lhs == b.source_.lhs && a.source_.rhs == b.source_.rhs))
    return false;
  if (!(a.target_.lhs == b.target_.lhs && a.target_.rhs == b.target_.rhs))
    return false;
  if (a.steps_.size() != b.steps_.size()) return false;
  for (size_t i = 0; i < a.steps_.size(); ++i) {
    const auto& ma = a.steps_[i].mapping;
    const auto& mb = b.steps_[i].mapping;
    if (ma.size() != mb.size()) return false;
    for (auto ita = ma.begin(), itb = mb.begin(); ita != ma.end();
         ++ita, ++itb)
      if (ita->first != itb->first || !(ita->second == itb->second))
        return false;
  }
  return true;
}

// --- proof file parsing --------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Parses a term whose variable names must already exist in `names`.
Term parse_image_term(const std::string& text,
                      const std::map<std::string, int>& names, size_t lineno) {
  // reuse the raw parser, then verify no new names appeared
  Term t;
  std::map<std::string, int> seen;
  try {
    RawEquation probe = parse_equation_raw(text + " = " + text);
    t = probe.lhs;
    seen = probe.var_of_name;
  } catch (const ParseError& pe) {
    throw ParseError(std::string("bad term: ") + pe.what(), lineno, true);
  }
  // remap indices chosen by the standalone parse onto the target's indices
  std::map<int, Term> remap;
  for (const auto& [name, idx] : seen) {
    auto it = names.find(name);
    if (it == names.end())
      throw ParseError("image term uses unknown variable '" + name + "'",
                       lineno, true);
    remap[idx] = Term::var(it->second);
  }
  return substitute_term(t, remap);
}

}  // namespace

HerbrandProof HerbrandProof::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  RawEquation source, target;
  bool have_source = false, have_target = false;
  std::vector<Substitution> steps;
  ProofLimits limits;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t colon = s.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'key: value'", lineno, true);
    std::string key = trim(s.substr(0, colon));
    std::string value = trim(s.substr(colon + 1));
    if (key == "source") {
      source = parse_equation_raw(value);
      have_source = true;
    } else if (key == "target") {
      target = parse_equation_raw(value);
      have_target = true;
    } else if (key == "step") {
      if (!have_source || !have_target)
        throw ParseError("step before source/target", lineno, true);
      Substitution sub;
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        size_t arrow = item.find("->");
        if (arrow == std::string::npos)
          throw ParseError("expected 'name -> term' in step", lineno, true);
        std::string name = trim(item.substr(0, arrow));
        std::string image = trim(item.substr(arrow + 2));
        auto src_it = source.var_of_name.find(name);
        if (src_it == source.var_of_name.end())
          throw ParseError("step maps unknown source variable '" + name + "'",
                           lineno, true);
        if (sub.mapping.count(src_it->second))
          throw ParseError("step maps '" + name + "' twice", lineno, true);
        sub.mapping[src_it->second] =
            parse_image_term(image, target.var_of_name, lineno);
      }
      if (sub.mapping.empty())
        throw ParseError("empty step", lineno, true);
      steps.push_back(std::move(sub));
    } else if (key == "limits") {
      std::istringstream items(value);
      std::string tok;
      while (items >> tok) {
        size_t eq = tok.find('=');
        if (eq == std::string::npos)
          throw ParseError("expected key=value in limits", lineno, true);
        std::string k = tok.substr(0, eq);
        int v = 0;
        try {
          v = std::stoi(tok.substr(eq + 1));
        } catch (...) {
          throw ParseError("bad limit value", lineno, true);
        }
        if (v <= 0) throw ParseError("limits must be positive", lineno, true);
        if (k == "depth")
          limits.depth = v;
        else if (k == "size")
          limits.term_size_cap = v;
        else
          throw ParseError("unknown limit '" + k + "'", lineno, true);
      }
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, true);
    }
  }
  if (!have_source || !have_target)
    throw ParseError("proof needs source and target lines", lineno, true);
  HerbrandProof p(std::move(source), std::move(target), std::move(steps));
  p.set_limits(limits);
  return p;
}

HerbrandProof HerbrandProof::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

// --- verification --------------------------------------------------------------

namespace {

int term_nodes(const Term& t) { return 2 * t.op_count() + 1; }

// One-sided matching: every pattern variable binds a subject subterm
// (premises are universally quantified, so their variables range over
// arbitrary terms).
bool match(const Term& pattern, const Term& subject,
           std::map<int, Term>& bindings) {
  if (pattern.is_var()) {
    auto [it, fresh] = bindings.emplace(pattern.var_index(), subject);
    return fresh || it->second == subject;
  }
  if (subject.is_var()) return false;
  return match(pattern.left(), subject.left(), bindings) &&
         match(pattern.right(), subject.right(), bindings);
}

Term subterm_at(const Term& t, const std::string& pos, size_t i = 0) {
  if (i == pos.size()) return t;
  if (t.is_var()) throw InvalidArgument("position leaves the term");
  return subterm_at(pos[i] == 'L' ? t.left() : t.right(), pos, i + 1);
}

Term replace_at(const Term& t, const std::string& pos, const Term& repl,
                size_t i = 0) {
  if (i == pos.size()) return repl;
  if (t.is_var()) throw InvalidArgument("position leaves the term");
  if (pos[i] == 'L')
    return Term::app(replace_at(t.left(), pos, repl, i + 1), t.right());
  return Term::app(t.left(), replace_at(t.right(), pos, repl, i + 1));
}

void collect_positions(const Term& t, std::string& prefix,
                       std::vector<std::string>& out) {
  out.push_back(prefix);
  if (t.is_var()) return;
  prefix.push_back('L');
  collect_positions(t.left(), prefix, out);
  prefix.back() = 'R';
  collect_positions(t.right(), prefix, out);
  prefix.pop_back();
}

struct SearchEntry {
  Term term;
  std::string parent;  // printed form; empty at the roots
  RewriteStep step;    // step that produced this term from parent
  int depth = 0;
};

using SearchMap = std::unordered_map<std::string, SearchEntry>;

std::vector<RewriteStep> chain_to_root(const SearchMap& side,
                                       const std::string& key) {
  std::vector<RewriteStep> steps;
  std::string cur = key;
  while (true) {
    const SearchEntry& e = side.at(cur);
    if (e.parent.empty()) break;
    steps.push_back(e.step);
    cur = e.parent;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

RewriteStep reversed(const RewriteStep& s) {
  RewriteStep r = s;
  std::swap(r.before, r.after);
  r.left_to_right = !s.left_to_right;
  return r;
}

}  // namespace

VerifyResult verify(const HerbrandProof& p) {
  VerifyResult result;
  auto rules = p.instances();
  const Term& goal_lhs = p.target().lhs;
  const Term& goal_rhs = p.target().rhs;

  // instance already identical to the target as a law: nothing to rewrite
  Equation target_canon(goal_lhs, goal_rhs);
  for (const auto& [il, ir] : rules) {
    if (Equation(il, ir) == target_canon) {
      result.proved = true;
      result.message = "premise instance coincides with the target";
      return result;
    }
  }
  if (goal_lhs == goal_rhs) {
    result.proved = true;
    result.message = "target sides are identical";
    return result;
  }

  const ProofLimits& limits = p.limits();
  uint32_t goal_mask = goal_lhs.var_mask() | goal_rhs.var_mask();
  std::vector<int> goal_vars;
  for (int v = 0; v < 32; ++v)
    if (goal_mask & (1u << v)) goal_vars.push_back(v);

  // all rule orientations, with the variables a template needs beyond its
  // pattern (to be instantiated from the goal variables)
  struct Orientation {
    int rule;
    bool left_to_right;
    Term pattern, templ;
    std::vector<int> free_vars;
  };
  std::vector<Orientation> orientations;
  for (size_t r = 0; r < rules.size(); ++r) {
    for (int dir = 0; dir < 2; ++dir) {
      Orientation o;
      o.rule = int(r);
      o.left_to_right = dir == 0;
      o.pattern = dir == 0 ? rules[r].first : rules[r].second;
      o.templ = dir == 0 ? rules[r].second : rules[r].first;
      uint32_t extra = o.templ.var_mask() & ~o.pattern.var_mask();
      for (int v = 0; v < 32; ++v)
        if (extra & (1u << v)) o.free_vars.push_back(v);
      orientations.push_back(std::move(o));
    }
  }

  SearchMap sides[2];
  std::deque<std::string> frontier[2];
  int depth_used[2] = {0, 0};
  auto add_root = [&](int side, const Term& t) {
    std::string key = print_term(t);
    sides[side].emplace(key, SearchEntry{t, "", {}, 0});
    frontier[side].push_back(key);
  };
  add_root(0, goal_lhs);
  add_root(1, goal_rhs);

  std::string meet;
  int64_t expanded = 0;

  // expands one full BFS level of `side`; returns true when the sides met
  auto expand_level = [&](int side) -> bool {
    size_t level_size = frontier[side].size();
    ++depth_used[side];
    std::vector<std::string> positions_buf;
    for (size_t item = 0; item < level_size; ++item) {
      std::string key = frontier[side].front();
      frontier[side].pop_front();
      Term t = sides[side].at(key).term;
      int t_nodes = term_nodes(t);
      positions_buf.clear();
      std::string prefix;
      collect_positions(t, prefix, positions_buf);
      for (const auto& pos : positions_buf) {
        Term sub = subterm_at(t, pos);
        int sub_nodes = term_nodes(sub);
        for (const auto& o : orientations) {
          std::map<int, Term> bindings;
          if (!match(o.pattern, sub, bindings)) continue;
          // enumerate goal-variable instantiations of unbound template vars
          size_t combos = 1;
          for (size_t i = 0; i < o.free_vars.size(); ++i)
            combos *= goal_vars.size();
          if (o.free_vars.empty()) combos = 1;
          for (size_t combo = 0; combo < combos; ++combo) {
            if (++expanded > limits.max_expansions) return false;
            std::map<int, Term> full = bindings;
            size_t c = combo;
            for (int fv : o.free_vars) {
              full[fv] = Term::var(goal_vars[c % goal_vars.size()]);
              c /= goal_vars.size();
            }
            Term repl = substitute_term(o.templ, full);
            if (t_nodes - sub_nodes + term_nodes(repl) > limits.term_size_cap)
              continue;
            Term next = replace_at(t, pos, repl);
            std::string next_key = print_term(next);
            if (sides[side].count(next_key)) continue;
            RewriteStep step;
            step.before = t;
            step.after = next;
            step.rule = o.rule;
            step.left_to_right = o.left_to_right;
            step.position = pos;
            step.bindings = std::move(full);
            sides[side].emplace(next_key,
                                SearchEntry{next, key, std::move(step),
                                            depth_used[side]});
            frontier[side].push_back(next_key);
            if (sides[1 - side].count(next_key)) {
              meet = next_key;
              return true;
            }
          }
        }
      }
    }
    return false;
  };

  // trivial meet: one root may already appear on the other side only when
  // lhs == rhs, handled above
  bool met = false;
  while (!met && expanded <= limits.max_expansions) {
    int side;
    bool can0 = depth_used[0] < limits.depth && !frontier[0].empty();
    bool can1 = depth_used[1] < limits.depth && !frontier[1].empty();
    if (!can0 && !can1) break;
    if (can0 && can1)
      side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    else
      side = can0 ? 0 : 1;
    met = expand_level(side);
  }
  result.expanded = expanded;
  if (!met) {
    result.proved = false;
    result.message = expanded > limits.max_expansions
                         ? "expansion budget exhausted"
                         : "no rewrite chain within depth/size limits";
    return result;
  }

  std::vector<RewriteStep> trace = chain_to_root(sides[0], meet);
  std::vector<RewriteStep> right = chain_to_root(sides[1], meet);
  for (auto it = right.rbegin(); it != right.rend(); ++it)
    trace.push_back(reversed(*it));
  result.trace = std::move(trace);
  result.proved = true;
  if (!replay_trace(p, result.trace)) {
    result.proved = false;
    result.trace.clear();
    result.message = "internal error: trace failed to replay";
    return result;
  }
  result.message = "rewrite chain of " + std::to_string(result.trace.size()) +
                   " steps";
  return result;
}

bool replay_trace(const HerbrandProof& p,
                  const std::vector<RewriteStep>& trace) {
  auto rules = p.instances();
  if (trace.empty()) {
    Equation target(p.target().lhs, p.target().rhs);
    if (p.target().lhs == p.target().rhs) return true;
    for (const auto& [il, ir] : rules)
      if (Equation(il, ir) == target) return true;
    return false;
  }
  if (!(trace.front().before == p.target().lhs)) return false;
  if (!(trace.back().after == p.target().rhs)) return false;
  for (size_t i = 0; i + 1 < trace.size(); ++i)
    if (!(trace[i].after == trace[i + 1].before)) return false;
  for (const auto& step : trace) {
    if (step.rule < 0 || size_t(step.rule) >= rules.size()) return false;
    const auto& rule = rules[size_t(step.rule)];
    const Term& from = step.left_to_right ? rule.first : rule.second;
    const Term& to = step.left_to_right ? rule.second : rule.first;
    Term sub, expected_sub, repl;
    try {
      sub = subterm_at(step.before, step.position);
      expected_sub = substitute_term(from, step.bindings);
      repl = substitute_term(to, step.bindings);
    } catch (const InvalidArgument&) {
      return false;
    }
    if (!(sub == expected_sub)) return false;
    Term rebuilt = replace_at(step.before, step.position, repl);
    if (!(rebuilt == step.after)) return false;
  }
  return true;
}

SemanticCheck verify_semantically(const HerbrandProof& p,
                                  const MagmaSample& sample) {
  if (sample.size() == 0) throw InvalidArgument("empty sample");
  SemanticCheck out;
  for (int64_t i = 0; i < sample.size(); ++i) {
    const Magma& m = sample.at(i);
    if (satisfies(m, p.source().lhs, p.source().rhs) &&
        !satisfies(m, p.target().lhs, p.target().rhs)) {
      out.consistent = false;
      out.counterexample = i;
      return out;
    }
  }
  return out;
}

}  // namespace eqlat
