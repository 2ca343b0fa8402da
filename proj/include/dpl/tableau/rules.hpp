#ifndef DPL_TABLEAU_RULES_HPP_
#define DPL_TABLEAU_RULES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dpl/algebra.hpp"
#include "dpl/errors.hpp"
#include "dpl/syntax/ast.hpp"
#include "dpl/syntax/printer.hpp"
#include "dpl/tableau/branch.hpp"

namespace dpl {

// A: conjunctive, B: disjunctive, P/N: modal possibility/necessity,
// PD/ND: deontic possibility/necessity, LIT: propositional literal,
// EQL: equation or inequation.
enum class RuleClass { A, B, P, N, PD, ND, LIT, EQL };

inline const char* to_string(RuleClass c) {
  switch (c) {
    case RuleClass::A: return "A";
    case RuleClass::B: return "B";
    case RuleClass::P: return "P";
    case RuleClass::N: return "N";
    case RuleClass::PD: return "PD";
    case RuleClass::ND: return "ND";
    case RuleClass::LIT: return "LIT";
    case RuleClass::EQL: return "EQL";
  }
  return "?";
}

inline RuleClass classify(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop:
    case K::True:
    case K::False: return RuleClass::LIT;
    case K::And: return RuleClass::A;
    case K::Or:
    case K::Implies:
    case K::Iff: return RuleClass::B;
    case K::Diamond: return RuleClass::P;
    case K::Box: return RuleClass::N;
    case K::PermW: return RuleClass::PD;
    case K::PermS: return RuleClass::ND;
    case K::Eq:
    case K::Neq: return RuleClass::EQL;
    case K::Not: break;
  }
  const Formula& g = f.operand();
  switch (g.kind()) {
    case K::Prop:
    case K::True:
    case K::False: return RuleClass::LIT;
    case K::Not:
    case K::Or:
    case K::Implies: return RuleClass::A;
    case K::And:
    case K::Iff: return RuleClass::B;
    case K::Box: return RuleClass::P;
    case K::Diamond: return RuleClass::N;
    case K::PermS: return RuleClass::PD;
    case K::PermW: return RuleClass::ND;
    case K::Eq:
    case K::Neq: return RuleClass::EQL;
  }
  return RuleClass::LIT;
}

// Action nearest the root of a P, N, PD or ND formula.
inline const ActionTerm& front_action(const Formula& f) {
  const Formula& g = f.is(Formula::Kind::Not) ? f.operand() : f;
  return g.action();
}

// The formula that must hold after the front action of a P or N formula.
inline Formula modal_component(const Formula& f) {
  if (f.is(Formula::Kind::Not)) return Formula::negation(f.operand().body());
  return f.body();
}

// EQ(B) plus a ⊓ b = 0 for every pair σ:P(a), σ:~Pw(b) sharing a label.
inline BooleanTheory eq_star(const Branch& b) {
  BooleanTheory theory(b.vocabulary());
  for (const auto& e : b.equations()) theory = theory.add_equation(e.lhs, e.rhs);
  for (LabelId l = 0; l < b.label_count(); ++l) {
    const auto& at = b.formulas_at(l);
    for (std::size_t i : at) {
      const Formula& strong = b.formulas()[i].formula;
      if (!strong.is(Formula::Kind::PermS)) continue;
      for (std::size_t j : at) {
        const Formula& neg_weak = b.formulas()[j].formula;
        if (!neg_weak.is_not(Formula::Kind::PermW)) continue;
        theory = theory.add_equation(ActionTerm::meet(strong.action(), neg_weak.operand().action()),
                                     ActionTerm::empty());
      }
    }
  }
  return theory;
}

// Facts produced by one alternative of a rule application. A fact with a
// `child` atom targets label·child, creating that label if needed.
struct Fact {
  LabelId label;
  std::optional<AtomId> child;
  Formula formula;
};

struct Alternative {
  std::vector<Fact> facts;
  std::vector<Equation> equations;
  std::vector<Equation> inequations;
};

enum class RuleKind { A, B, P, N, PD, ND, Per, EQL, LIT };

inline const char* to_string(RuleKind r) {
  switch (r) {
    case RuleKind::A: return "A";
    case RuleKind::B: return "B";
    case RuleKind::P: return "P";
    case RuleKind::N: return "N";
    case RuleKind::PD: return "PD";
    case RuleKind::ND: return "ND";
    case RuleKind::Per: return "Per";
    case RuleKind::EQL: return "EQL";
    case RuleKind::LIT: return "LIT";
  }
  return "?";
}

// Branching rules fire once per labeled formula; N and ND are re-run until
// they add nothing, because new labels and new atom-level facts widen them.
inline bool is_generative(RuleKind r) { return r == RuleKind::N || r == RuleKind::ND || r == RuleKind::Per; }

// Outcome of a rule on one labeled formula. No alternatives means the branch
// closes (the front action has no possible execution).
struct Expansion {
  RuleKind rule;
  std::vector<Alternative> alternatives;
};

namespace detail {

inline Equation nonempty_atom(AtomId a, const Vocabulary& v) { return {atom_term(a, v), ActionTerm::empty()}; }

inline Expansion expand_with(const Branch& b, const LabeledFormula& lf, const BooleanTheory& gamma, RuleKind rule) {
  using K = Formula::Kind;
  const Formula& f = lf.formula;
  const LabelId s = lf.label;
  const Vocabulary& v = b.vocabulary();
  Expansion out{rule, {}};
  auto one = [&](std::vector<Formula> parts) {
    Alternative alt;
    for (auto& p : parts) alt.facts.push_back({s, std::nullopt, std::move(p)});
    out.alternatives.push_back(std::move(alt));
  };
  auto neg = [](const Formula& g) { return Formula::negation(g); };

  switch (rule) {
    case RuleKind::LIT: out.alternatives.emplace_back(); break;
    case RuleKind::EQL: {
      Alternative alt;
      bool negated = f.is(K::Not);
      const Formula& e = negated ? f.operand() : f;
      bool positive = e.is(K::Eq) != negated;
      (positive ? alt.equations : alt.inequations).push_back({e.left_term(), e.right_term()});
      out.alternatives.push_back(std::move(alt));
      break;
    }
    case RuleKind::A:
      if (f.is(K::And)) {
        one({f.lhs(), f.rhs()});
      } else {
        const Formula& g = f.operand();
        if (g.is(K::Not)) one({g.operand()});
        else if (g.is(K::Or)) one({neg(g.lhs()), neg(g.rhs())});
        else one({g.lhs(), neg(g.rhs())});  // ~(x -> y)
      }
      break;
    case RuleKind::B:
      if (f.is(K::Or)) {
        one({f.lhs()});
        one({f.rhs()});
      } else if (f.is(K::Implies)) {
        one({neg(f.lhs())});
        one({f.rhs()});
      } else if (f.is(K::Iff)) {
        one({f.lhs(), f.rhs()});
        one({neg(f.lhs()), neg(f.rhs())});
      } else {
        const Formula& g = f.operand();
        if (g.is(K::And)) {
          one({neg(g.lhs())});
          one({neg(g.rhs())});
        } else {  // ~(x <-> y)
          one({g.lhs(), neg(g.rhs())});
          one({neg(g.lhs()), g.rhs()});
        }
      }
      break;
    case RuleKind::P: {
      Formula body = modal_component(f);
      for (AtomId a : atoms_below(gamma, front_action(f))) {
        Alternative alt;
        alt.facts.push_back({s, a, body});
        alt.inequations.push_back(nonempty_atom(a, v));
        out.alternatives.push_back(std::move(alt));
      }
      break;
    }
    case RuleKind::N: {
      Formula body = modal_component(f);
      AtomRange below = atoms_below(gamma, front_action(f));
      Alternative alt;
      for (LabelId c : b.children(s))
        if (below.accepts(b.atom(c))) alt.facts.push_back({c, std::nullopt, body});
      out.alternatives.push_back(std::move(alt));
      break;
    }
    case RuleKind::PD: {
      bool weak = f.is(K::PermW);
      for (AtomId a : atoms_below(gamma, front_action(f))) {
        ActionTerm t = atom_term(a, v);
        Alternative alt;
        alt.facts.push_back({s, std::nullopt, weak ? Formula::perm_weak(t) : neg(Formula::perm_strong(t))});
        alt.inequations.push_back({t, ActionTerm::empty()});
        out.alternatives.push_back(std::move(alt));
      }
      break;
    }
    case RuleKind::ND: {
      // Only labels already holding an atom-level PD fact are touched.
      bool strong = f.is(K::PermS);
      AtomRange below = atoms_below(gamma, front_action(f));
      Alternative alt;
      for (std::size_t i : b.formulas_at(s)) {
        const Formula& g = b.formulas()[i].formula;
        const ActionTerm* t = nullptr;
        if (g.is(K::PermW)) t = &g.action();
        else if (g.is_not(K::PermS)) t = &g.operand().action();
        if (!t) continue;
        auto a = as_atom(gamma, *t);
        if (!a || !below.accepts(*a)) continue;
        alt.facts.push_back({s, std::nullopt, strong ? Formula::perm_strong(*t) : neg(Formula::perm_weak(*t))});
      }
      out.alternatives.push_back(std::move(alt));
      break;
    }
    case RuleKind::Per: {
      Alternative alt;
      if (f.is(K::PermW) && as_atom(gamma, f.action())) alt.facts.push_back({s, std::nullopt, Formula::perm_strong(f.action())});
      out.alternatives.push_back(std::move(alt));
      break;
    }
  }
  return out;
}

inline RuleKind default_rule(RuleClass c) {
  switch (c) {
    case RuleClass::A: return RuleKind::A;
    case RuleClass::B: return RuleKind::B;
    case RuleClass::P: return RuleKind::P;
    case RuleClass::N: return RuleKind::N;
    case RuleClass::PD: return RuleKind::PD;
    case RuleClass::ND: return RuleKind::ND;
    case RuleClass::LIT: return RuleKind::LIT;
    case RuleClass::EQL: return RuleKind::EQL;
  }
  return RuleKind::LIT;
}

}  // namespace detail

// Computes what `rule` (by default the one for the formula's class) would add.
inline Expansion expand(const Branch& b, const LabeledFormula& lf, std::optional<RuleKind> rule = std::nullopt) {
  RuleKind r = rule ? *rule : detail::default_rule(classify(lf.formula));
  if (r == RuleKind::Per && !lf.formula.is(Formula::Kind::PermW))
    throw PreconditionError("rule Per applies only to weak permissions");
  return detail::expand_with(b, lf, eq_star(b), r);
}

// Applies one alternative in place; returns the rendered facts that were new.
inline std::vector<std::string> apply_alternative(Branch& b, const Alternative& alt) {
  std::vector<std::string> added;
  for (const auto& fact : alt.facts) {
    LabelId target = fact.child ? b.ensure_child(fact.label, *fact.child) : fact.label;
    if (b.add(target, fact.formula)) added.push_back(b.render(b.formulas().size() - 1));
  }
  for (const auto& e : alt.equations)
    if (b.add_equation(e)) added.push_back(to_string(e.lhs) + " = " + to_string(e.rhs));
  for (const auto& e : alt.inequations)
    if (b.add_inequation(e)) added.push_back(to_string(e.lhs) + " != " + to_string(e.rhs));
  return added;
}

inline std::optional<std::size_t> find_formula(const Branch& b, const LabeledFormula& lf) {
  for (std::size_t i : b.formulas_at(lf.label))
    if (b.formulas()[i].formula == lf.formula) return i;
  return std::nullopt;
}

// Functional form of a single rule application: one successor branch per
// alternative. One-shot rules refuse a formula that was already expanded.
inline std::vector<Branch> apply_rule(const Branch& b, const LabeledFormula& lf,
                                      std::optional<RuleKind> rule = std::nullopt) {
  auto index = find_formula(b, lf);
  if (!index) throw PreconditionError("labeled formula is not on the branch");
  Expansion e = expand(b, lf, rule);
  bool one_shot = !is_generative(e.rule);
  if (one_shot && b.is_expanded(*index)) throw PreconditionError("labeled formula already expanded");
  std::vector<Branch> out;
  if (e.alternatives.empty()) {
    Branch closed = b;
    if (one_shot) closed.mark_expanded(*index);
    closed.mark_closed("no possible execution of " + to_string(front_action(lf.formula)));
    out.push_back(std::move(closed));
    return out;
  }
  for (const auto& alt : e.alternatives) {
    Branch next = b;
    if (one_shot) next.mark_expanded(*index);
    apply_alternative(next, alt);
    out.push_back(std::move(next));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

enum class ClosureKind { OpenSoFar, ClosedProp, ClosedDeontic, ClosedBoolean, ClosedRule };

struct ClosureVerdict {
  ClosureKind kind = ClosureKind::OpenSoFar;
  std::string reason;

  bool closed() const noexcept { return kind != ClosureKind::OpenSoFar; }
};

inline ClosureVerdict closure_verdict(const Branch& b, const BooleanTheory& gamma) {
  using K = Formula::Kind;
  if (b.closed_reason()) return {ClosureKind::ClosedRule, *b.closed_reason()};
  for (const auto& lf : b.formulas()) {
    const Formula& f = lf.formula;
    std::string at = b.label_name(lf.label) + " : ";
    if (f.is(K::False) || f.is_not(K::True)) return {ClosureKind::ClosedProp, at + pretty_print(f)};
    if (!f.is(K::Not)) continue;
    const Formula& g = f.operand();
    if (g.is(K::Prop) && b.contains(lf.label, g))
      return {ClosureKind::ClosedProp, at + g.name() + " and " + pretty_print(f)};
    if ((g.is(K::PermS) || g.is(K::PermW)) && b.contains(lf.label, g))
      return {ClosureKind::ClosedDeontic, at + pretty_print(g) + " and " + pretty_print(f)};
    if (g.is(K::PermS)) {
      Formula weak = Formula::perm_weak(g.action());
      if (b.contains(lf.label, weak) && as_atom(gamma, g.action()))
        return {ClosureKind::ClosedDeontic, at + pretty_print(weak) + " and " + pretty_print(f) + " on an atom"};
    }
  }
  if (is_inconsistent(gamma)) return {ClosureKind::ClosedBoolean, "EQ* proves 0 = U"};
  for (const auto& e : b.inequations())
    if (proves_equal(gamma, e.lhs, e.rhs))
      return {ClosureKind::ClosedBoolean, "EQ* proves " + to_string(e.lhs) + " = " + to_string(e.rhs)};
  return {};
}

inline ClosureVerdict closure_verdict(const Branch& b) { return closure_verdict(b, eq_star(b)); }

}  // namespace dpl

#endif  // DPL_TABLEAU_RULES_HPP_
