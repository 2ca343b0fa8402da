#ifndef DPL_TABLEAU_PROVER_HPP_
#define DPL_TABLEAU_PROVER_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpl/algebra.hpp"
#include "dpl/errors.hpp"
#include "dpl/syntax/metrics.hpp"
#include "dpl/tableau/branch.hpp"
#include "dpl/tableau/rules.hpp"

namespace dpl {

// One rule application (or a branch ending). `produced` holds one entry per
// alternative; each entry lists the facts that alternative added.
struct TraceRecord {
  std::string branch;
  std::string rule;
  std::string premise;
  std::vector<std::vector<std::string>> produced;
};

struct TableauStats {
  std::size_t branches = 0;           // leaves reached (closed or open)
  std::size_t rule_applications = 0;
  std::size_t peak_live_formulas = 0;  // largest labeled-formula count held at once
};

struct TableauResult {
  bool closed = false;
  std::vector<TraceRecord> trace;
  std::optional<Branch> open_branch;  // saturated and not closed; set iff !closed
  TableauStats stats;
};

struct ProveOptions {
  bool record_trace = true;
};

namespace detail {

class Prover {
 public:
  Prover(Vocabulary vocab, const Formula& f, ProveOptions opts) : branch_(std::move(vocab), f), opts_(opts) {}

  TableauResult run() {
    TableauResult result;
    note_size();
    result.closed = explore("0");
    result.trace = std::move(trace_);
    result.stats = stats_;
    result.open_branch = std::move(open_);
    return result;
  }

 private:
  const BooleanTheory& gamma() {
    if (!gamma_ || gamma_version_ != branch_.version()) {
      gamma_ = eq_star(branch_);
      gamma_version_ = branch_.version();
    }
    return *gamma_;
  }

  void note_size() { stats_.peak_live_formulas = std::max(stats_.peak_live_formulas, branch_.formulas().size()); }

  void record(const std::string& id, const char* rule, std::string premise, std::vector<std::vector<std::string>> produced) {
    if (!opts_.record_trace) return;
    trace_.push_back({id, rule, std::move(premise), std::move(produced)});
  }

  // Fires a single-alternative rule in place; true if anything was added.
  bool fire(const std::string& id, std::size_t index, RuleKind rule) {
    LabeledFormula lf = branch_.formulas()[index];
    Expansion e = detail::expand_with(branch_, lf, gamma(), rule);
    if (e.alternatives.size() != 1) return false;
    auto added = apply_alternative(branch_, e.alternatives.front());
    note_size();
    if (added.empty()) return false;
    ++stats_.rule_applications;
    record(id, to_string(rule), branch_.render(index), {std::move(added)});
    return true;
  }

  // Deterministic rules to fixpoint: A and EQL first, then the generative N,
  // ND and Per rules. Stops early once the branch is closed.
  void saturate(const std::string& id) {
    for (;;) {
      bool changed = false;
      for (std::size_t i = 0; i < branch_.formulas().size(); ++i) {
        if (branch_.is_expanded(i)) continue;
        RuleClass c = classify(branch_.formulas()[i].formula);
        if (c != RuleClass::A && c != RuleClass::EQL && c != RuleClass::LIT) continue;
        branch_.mark_expanded(i);
        if (c != RuleClass::LIT) changed |= fire(id, i, detail::default_rule(c));
      }
      if (closure_verdict(branch_, gamma()).closed()) return;
      for (std::size_t i = 0; i < branch_.formulas().size(); ++i) {
        const Formula& f = branch_.formulas()[i].formula;
        RuleClass c = classify(f);
        if (c == RuleClass::N) changed |= fire(id, i, RuleKind::N);
        else if (c == RuleClass::ND) changed |= fire(id, i, RuleKind::ND);
        else if (f.is(Formula::Kind::PermW)) changed |= fire(id, i, RuleKind::Per);
      }
      if (!changed) return;
    }
  }

  // First unexpanded formula for a branching rule: B, then PD, then P.
  std::optional<std::size_t> pick() const {
    for (RuleClass want : {RuleClass::B, RuleClass::PD, RuleClass::P})
      for (std::size_t i = 0; i < branch_.formulas().size(); ++i)
        if (!branch_.is_expanded(i) && classify(branch_.formulas()[i].formula) == want) return i;
    return std::nullopt;
  }

  // Depth-first search below the current branch state. Returns true when
  // every branch below closes; otherwise leaves a copy in `open_`.
  bool explore(const std::string& id) {
    for (;;) {
      saturate(id);
      ClosureVerdict v = closure_verdict(branch_, gamma());
      if (v.closed()) {
        ++stats_.branches;
        record(id, "CLOSE", v.reason, {});
        return true;
      }
      auto index = pick();
      if (!index) {
        ++stats_.branches;
        record(id, "OPEN", "saturated", {});
        open_ = branch_;
        return false;
      }
      LabeledFormula lf = branch_.formulas()[*index];
      Expansion e = detail::expand_with(branch_, lf, gamma(), detail::default_rule(classify(lf.formula)));
      branch_.mark_expanded(*index);
      ++stats_.rule_applications;
      if (e.alternatives.empty()) {
        branch_.mark_closed("no possible execution of " + to_string(front_action(lf.formula)));
        record(id, to_string(e.rule), branch_.render(*index), {});
        continue;
      }
      if (e.alternatives.size() == 1) {
        auto added = apply_alternative(branch_, e.alternatives.front());
        note_size();
        record(id, to_string(e.rule), branch_.render(*index), {std::move(added)});
        continue;
      }
      std::vector<std::vector<std::string>> produced;
      // Render each alternative's facts for the trace without applying them.
      if (opts_.record_trace) {
        for (const auto& alt : e.alternatives) {
          auto m = branch_.mark();
          produced.push_back(apply_alternative(branch_, alt));
          branch_.undo(m);
        }
      }
      record(id, to_string(e.rule), branch_.render(*index), std::move(produced));
      for (std::size_t k = 0; k < e.alternatives.size(); ++k) {
        auto m = branch_.mark();
        apply_alternative(branch_, e.alternatives[k]);
        note_size();
        bool closed = explore(id + "." + std::to_string(k));
        if (!closed) return false;
        branch_.undo(m);
      }
      return true;
    }
  }

  Branch branch_;
  ProveOptions opts_;
  std::optional<BooleanTheory> gamma_;
  std::uint64_t gamma_version_ = 0;
  std::vector<TraceRecord> trace_;
  TableauStats stats_;
  std::optional<Branch> open_;
};

}  // namespace detail

// True when no rule would change the branch: every one-shot formula is
// expanded and the generative rules have nothing left to add.
inline bool is_saturated(const Branch& b) {
  const BooleanTheory gamma = eq_star(b);
  for (std::size_t i = 0; i < b.formulas().size(); ++i) {
    const LabeledFormula& lf = b.formulas()[i];
    RuleClass c = classify(lf.formula);
    std::vector<RuleKind> generative;
    if (c == RuleClass::N) generative.push_back(RuleKind::N);
    else if (c == RuleClass::ND) generative.push_back(RuleKind::ND);
    else if (c == RuleClass::LIT) continue;
    else if (!b.is_expanded(i)) return false;
    if (lf.formula.is(Formula::Kind::PermW)) generative.push_back(RuleKind::Per);
    for (RuleKind r : generative) {
      Expansion e = detail::expand_with(b, lf, gamma, r);
      for (const auto& fact : e.alternatives.front().facts) {
        auto target = fact.child ? b.child(fact.label, *fact.child) : std::optional<LabelId>(fact.label);
        if (!target || !b.contains(*target, fact.formula)) return false;
      }
    }
  }
  return true;
}

// Builds the tableau for <>:f depth first, keeping a single branch in memory
// and backtracking over alternatives. Pass the negation of a formula to test
// its validity.
inline TableauResult prove_tableau(const Formula& f, const Vocabulary& vocab, ProveOptions opts = {}) {
  if (!equations_outside_modalities(f)) throw PreconditionError("equation inside a modal scope");
  for (const auto& a : primitive_actions(f))
    if (!vocab.has_action(a)) throw VocabularyError("undeclared action '" + a + "'");
  return detail::Prover(vocab, f, opts).run();
}

}  // namespace dpl

#endif  // DPL_TABLEAU_PROVER_HPP_
