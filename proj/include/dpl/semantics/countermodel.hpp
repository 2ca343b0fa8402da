#ifndef DPL_SEMANTICS_COUNTERMODEL_HPP_
#define DPL_SEMANTICS_COUNTERMODEL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpl/algebra.hpp"
#include "dpl/errors.hpp"
#include "dpl/semantics/structure.hpp"
#include "dpl/tableau/branch.hpp"
#include "dpl/tableau/prover.hpp"
#include "dpl/tableau/rules.hpp"

namespace dpl {

// Reads a structure off an open saturated branch. Worlds are the labels and
// the events are atoms: those on edges, those named by atom-level Pw/~P facts,
// and one witness per inequation. An event is permitted at a label when the
// label holds Pw of that atom or P of any term above it.
inline VStructure extract_countermodel(const Branch& b) {
  const BooleanTheory gamma = eq_star(b);
  if (closure_verdict(b, gamma).closed()) throw PreconditionError("branch is closed");
  if (!is_saturated(b)) throw PreconditionError("branch is not saturated");
  const Vocabulary& v = b.vocabulary();
  const AtomSet& forced = gamma.forced_empty();

  AtomSet used(v.size());
  for (LabelId l = 1; l < b.label_count(); ++l) used.insert(b.atom(l));
  for (const auto& lf : b.formulas()) {
    const Formula& f = lf.formula;
    const ActionTerm* t = nullptr;
    if (f.is(Formula::Kind::PermW)) t = &f.action();
    else if (f.is_not(Formula::Kind::PermS)) t = &f.operand().action();
    if (!t) continue;
    if (auto a = as_atom(gamma, *t)) used.insert(*a);
  }
  for (const auto& e : b.inequations()) {
    auto witnesses = (denote(e.lhs, v) ^ denote(e.rhs, v)) - forced;
    auto atoms = witnesses.atoms();
    if (atoms.empty()) throw PreconditionError("branch is closed");
    bool covered = false;
    for (AtomId a : atoms) covered = covered || used.contains(a);
    if (!covered) used.insert(atoms.front());
  }
  if (used.empty()) {
    auto free = forced.complement().atoms();
    if (free.empty()) throw PreconditionError("branch is closed");
    used.insert(free.front());
  }

  VStructure m;
  std::map<std::uint32_t, std::size_t> event_of;
  std::vector<AtomId> atoms = used.atoms();
  for (AtomId a : atoms) {
    event_of[a.bits] = m.events.size();
    m.events.push_back(atom_name(a, v));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto& es = m.interp_actions[v.actions()[i]];
    for (AtomId a : atoms)
      if (a.contains(i)) es.insert(event_of[a.bits]);
  }
  for (LabelId l = 0; l < b.label_count(); ++l) m.worlds.push_back(b.label_name(l));
  for (LabelId l = 1; l < b.label_count(); ++l) m.transitions.insert({b.parent(l), event_of.at(b.atom(l).bits), l});

  for (const auto& lf : b.formulas()) {
    const Formula& f = lf.formula;
    if (f.is(Formula::Kind::Prop)) {
      m.interp_props[f.name()].insert(lf.label);
    } else if (f.is(Formula::Kind::PermW)) {
      if (auto a = as_atom(gamma, f.action())) m.permitted.insert({lf.label, event_of.at(a->bits)});
    } else if (f.is(Formula::Kind::PermS)) {
      TermProgram below(f.action(), v);
      for (AtomId a : atoms)
        if (below.contains(a)) m.permitted.insert({lf.label, event_of.at(a.bits)});
    }
  }
  return m;
}

}  // namespace dpl

#endif  // DPL_SEMANTICS_COUNTERMODEL_HPP_
