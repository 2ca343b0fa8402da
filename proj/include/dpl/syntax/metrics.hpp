#ifndef DPL_SYNTAX_METRICS_HPP_
#define DPL_SYNTAX_METRICS_HPP_

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "dpl/errors.hpp"
#include "dpl/syntax/ast.hpp"

namespace dpl {

// ---------------------------------------------------------------------------
// Negation normal form
// ---------------------------------------------------------------------------

inline Formula nnf(const Formula& f);

namespace detail {

// nnf(~f)
inline Formula nnf_negated(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop:
    case K::PermS:
    case K::PermW: return Formula::negation(f);
    case K::True: return Formula::falsity();
    case K::False: return Formula::truth();
    case K::Not: return nnf(f.operand());
    case K::And: return Formula::disj(nnf_negated(f.lhs()), nnf_negated(f.rhs()));
    case K::Or: return Formula::conj(nnf_negated(f.lhs()), nnf_negated(f.rhs()));
    case K::Implies: return Formula::conj(nnf(f.lhs()), nnf_negated(f.rhs()));
    case K::Iff:
      return Formula::disj(Formula::conj(nnf(f.lhs()), nnf_negated(f.rhs())),
                           Formula::conj(nnf_negated(f.lhs()), nnf(f.rhs())));
    case K::Box: return Formula::diamond(f.action(), nnf_negated(f.body()));
    case K::Diamond: return Formula::box(f.action(), nnf_negated(f.body()));
    case K::Eq: return Formula::not_equal(f.left_term(), f.right_term());
    case K::Neq: return Formula::equal(f.left_term(), f.right_term());
  }
  return f;
}

}  // namespace detail

// Pushes negations down to propositions and deontic predicates. Implications
// and biconditionals are expanded; diamonds stay diamonds.
inline Formula nnf(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Not: return detail::nnf_negated(f.operand());
    case K::And: return Formula::conj(nnf(f.lhs()), nnf(f.rhs()));
    case K::Or: return Formula::disj(nnf(f.lhs()), nnf(f.rhs()));
    case K::Implies: return Formula::disj(detail::nnf_negated(f.lhs()), nnf(f.rhs()));
    case K::Iff:
      return Formula::disj(Formula::conj(nnf(f.lhs()), nnf(f.rhs())),
                           Formula::conj(detail::nnf_negated(f.lhs()), detail::nnf_negated(f.rhs())));
    case K::Box: return Formula::box(f.action(), nnf(f.body()));
    case K::Diamond: return Formula::diamond(f.action(), nnf(f.body()));
    default: return f;
  }
}

inline bool is_nnf(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Not: {
      auto k = f.operand().kind();
      return k == K::Prop || k == K::PermS || k == K::PermW;
    }
    case K::Implies:
    case K::Iff: return false;
    case K::And:
    case K::Or: return is_nnf(f.lhs()) && is_nnf(f.rhs());
    case K::Box:
    case K::Diamond: return is_nnf(f.body());
    default: return true;
  }
}

// ---------------------------------------------------------------------------
// Syntactic measures
// ---------------------------------------------------------------------------

// Longest chain of nested modalities; deontic predicates count 0.
inline std::size_t degree(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Not: return degree(f.operand());
    case K::Implies:
    case K::And:
    case K::Or:
    case K::Iff: return std::max(degree(f.lhs()), degree(f.rhs()));
    case K::Box:
    case K::Diamond: return 1 + degree(f.body());
    default: return 0;
  }
}

inline void collect_actions(const ActionTerm& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case ActionTerm::Kind::Prim: out.insert(t.name()); break;
    case ActionTerm::Kind::Meet:
    case ActionTerm::Kind::Join:
      collect_actions(t.lhs(), out);
      collect_actions(t.rhs(), out);
      break;
    case ActionTerm::Kind::Compl: collect_actions(t.operand(), out); break;
    default: break;
  }
}

inline void collect_actions(const Formula& f, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Not: collect_actions(f.operand(), out); break;
    case K::Implies:
    case K::And:
    case K::Or:
    case K::Iff:
      collect_actions(f.lhs(), out);
      collect_actions(f.rhs(), out);
      break;
    case K::Box:
    case K::Diamond:
      collect_actions(f.action(), out);
      collect_actions(f.body(), out);
      break;
    case K::PermS:
    case K::PermW: collect_actions(f.action(), out); break;
    case K::Eq:
    case K::Neq:
      collect_actions(f.left_term(), out);
      collect_actions(f.right_term(), out);
      break;
    default: break;
  }
}

inline std::set<std::string> primitive_actions(const Formula& f) {
  std::set<std::string> out;
  collect_actions(f, out);
  return out;
}

inline std::set<std::string> propositions(const Formula& f) {
  std::set<std::string> out;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    using K = Formula::Kind;
    switch (g.kind()) {
      case K::Prop: out.insert(g.name()); break;
      case K::Not: self(self, g.operand()); break;
      case K::Implies:
      case K::And:
      case K::Or:
      case K::Iff:
        self(self, g.lhs());
        self(self, g.rhs());
        break;
      case K::Box:
      case K::Diamond: self(self, g.body()); break;
      default: break;
    }
  };
  walk(walk, f);
  return out;
}

// True when no Eq/Neq occurs under a Box or Diamond.
inline bool equations_outside_modalities(const Formula& f, bool under_modality = false) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Neq: return !under_modality;
    case K::Not: return equations_outside_modalities(f.operand(), under_modality);
    case K::Implies:
    case K::And:
    case K::Or:
    case K::Iff:
      return equations_outside_modalities(f.lhs(), under_modality) &&
             equations_outside_modalities(f.rhs(), under_modality);
    case K::Box:
    case K::Diamond: return equations_outside_modalities(f.body(), true);
    default: return true;
  }
}

// Existential formulae are <a>f, Pw(a) and ~P(a).
inline bool is_existential(const Formula& f) {
  return f.is(Formula::Kind::Diamond) || f.is(Formula::Kind::PermW) || f.is_not(Formula::Kind::PermS);
}

// Number of existential nodes of nnf(f) at each modal depth (index = depth).
inline std::vector<std::size_t> existential_profile(const Formula& f) {
  std::vector<std::size_t> counts;
  auto walk = [&](auto&& self, const Formula& g, std::size_t depth) -> void {
    if (counts.size() <= depth) counts.resize(depth + 1, 0);
    if (is_existential(g)) ++counts[depth];
    using K = Formula::Kind;
    switch (g.kind()) {
      case K::And:
      case K::Or:
        self(self, g.lhs(), depth);
        self(self, g.rhs(), depth);
        break;
      case K::Box:
      case K::Diamond: self(self, g.body(), depth + 1); break;
      default: break;
    }
  };
  walk(walk, nnf(f), 0);
  return counts;
}

// Largest number of existential subformulae at a single level of the syntax
// tree of nnf(f). No DNF distribution is performed, so this may exceed the
// degree of an equivalent disjunctive normal form.
inline std::size_t existential_degree(const Formula& f) {
  auto profile = existential_profile(f);
  return profile.empty() ? 0 : *std::max_element(profile.begin(), profile.end());
}

// ---------------------------------------------------------------------------
// Normal forms and subformulae at level k
// ---------------------------------------------------------------------------

// Flattens nested conjunctions; `true` contributes nothing.
inline void conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Formula::Kind::And)) {
    conjuncts(f.lhs(), out);
    conjuncts(f.rhs(), out);
  } else if (!f.is(Formula::Kind::True)) {
    out.push_back(f);
  }
}

inline bool is_normal_form(const Formula& f);

namespace detail {

inline bool is_nf_item(const Formula& g) {
  using K = Formula::Kind;
  switch (g.kind()) {
    case K::Prop:
    case K::PermS:
    case K::PermW: return true;
    case K::Diamond: return is_normal_form(g.body());
    case K::Not: {
      const Formula& x = g.operand();
      if (x.is(K::Prop) || x.is(K::PermS) || x.is(K::PermW)) return true;
      return x.is(K::Diamond) && is_normal_form(x.body());
    }
    default: return false;
  }
}

}  // namespace detail

// Conjunction of literals (p, ~p, P, ~P, Pw, ~Pw), <a>F and ~<a>F with F
// itself in normal form.
inline bool is_normal_form(const Formula& f) {
  std::vector<Formula> items;
  conjuncts(f, items);
  return std::all_of(items.begin(), items.end(), detail::is_nf_item);
}

// Negation with double negations removed (full NNF of ~f).
inline Formula simplified_negation(const Formula& f) { return nnf(Formula::negation(f)); }

struct FormulaSet {
  std::vector<Formula> items;  // insertion order
  std::unordered_set<Formula, FormulaHash> index;

  bool insert(const Formula& f) {
    if (!index.insert(f).second) return false;
    items.push_back(f);
    return true;
  }
  bool contains(const Formula& f) const { return index.count(f) > 0; }
  std::size_t size() const { return items.size(); }
};

// SF(f, k): what must hold k transitions below a world satisfying f.
inline FormulaSet subformulae_at_level(const Formula& f, std::size_t k) {
  if (!is_normal_form(f)) throw PreconditionError("formula is not in normal form: subformulae_at_level");
  std::vector<Formula> items;
  conjuncts(f, items);
  FormulaSet out;
  if (k == 0) {
    for (const auto& g : items) out.insert(g);
    return out;
  }
  for (const auto& g : items) {
    if (g.is(Formula::Kind::Diamond)) {
      for (const auto& s : subformulae_at_level(g.body(), k - 1).items) out.insert(s);
    } else if (g.is_not(Formula::Kind::Diamond)) {
      for (const auto& s : subformulae_at_level(g.operand().body(), k - 1).items) out.insert(simplified_negation(s));
    }
  }
  return out;
}

inline std::size_t count_existential(const FormulaSet& s) {
  return static_cast<std::size_t>(std::count_if(s.items.begin(), s.items.end(), is_existential));
}

}  // namespace dpl

#endif  // DPL_SYNTAX_METRICS_HPP_
