#ifndef DPL_TABLEAU_BRANCH_HPP_
#define DPL_TABLEAU_BRANCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dpl/algebra.hpp"
#include "dpl/errors.hpp"
#include "dpl/syntax/ast.hpp"
#include "dpl/syntax/printer.hpp"
#include "dpl/syntax/vocabulary.hpp"

namespace dpl {

using LabelId = std::uint32_t;
inline constexpr LabelId kRootLabel = 0;

struct LabeledFormula {
  LabelId label;
  Formula formula;
  friend bool operator==(const LabeledFormula&, const LabeledFormula&) = default;
};

struct LabeledFormulaHash {
  std::size_t operator()(const LabeledFormula& lf) const noexcept {
    return detail::hash_mix(lf.formula.hash(), lf.label);
  }
};

// One tableau branch: labeled formulae, the equations and inequations met so
// far, and the tree of labels. All containers only grow between marks, so a
// Mark/undo pair restores an earlier state exactly; the prover keeps one
// Branch alive and backtracks through it.
class Branch {
 public:
  struct Mark {
    std::size_t labels, formulas, equations, inequations, expanded;
    std::optional<std::string> closed_reason;
  };

  Branch(Vocabulary vocab, Formula root) : vocab_(std::move(vocab)), root_(std::move(root)) {
    labels_.push_back({kRootLabel, AtomId{}, 0});
    children_.emplace_back();
    by_label_.emplace_back();
    add(kRootLabel, root_);
  }

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  const Formula& root_formula() const noexcept { return root_; }

  // ---- labels ----

  std::size_t label_count() const noexcept { return labels_.size(); }
  LabelId parent(LabelId l) const { return labels_.at(l).parent; }
  // The atom on the edge into `l`; meaningless for the root.
  AtomId atom(LabelId l) const { return labels_.at(l).atom; }
  std::size_t depth(LabelId l) const { return labels_.at(l).depth; }
  const std::vector<LabelId>& children(LabelId l) const { return children_.at(l); }

  std::optional<LabelId> child(LabelId parent, AtomId a) const {
    auto it = child_index_.find(child_key(parent, a));
    if (it == child_index_.end()) return std::nullopt;
    return it->second;
  }

  LabelId ensure_child(LabelId parent, AtomId a) {
    if (auto c = child(parent, a)) return *c;
    auto id = static_cast<LabelId>(labels_.size());
    labels_.push_back({parent, a, depth(parent) + 1});
    children_.emplace_back();
    by_label_.emplace_back();
    children_[parent].push_back(id);
    child_index_.emplace(child_key(parent, a), id);
    ++version_;
    return id;
  }

  std::vector<AtomId> path(LabelId l) const {
    std::vector<AtomId> out(depth(l));
    for (LabelId cur = l; cur != kRootLabel; cur = parent(cur)) out[depth(cur) - 1] = atom(cur);
    return out;
  }

  std::string label_name(LabelId l) const {
    std::string out = "<";
    bool first = true;
    for (AtomId a : path(l)) {
      if (!first) out += ", ";
      out += atom_name(a, vocab_);
      first = false;
    }
    return out + ">";
  }

  // ---- formulae ----

  const std::vector<LabeledFormula>& formulas() const noexcept { return formulas_; }
  const std::vector<std::size_t>& formulas_at(LabelId l) const { return by_label_.at(l); }
  bool contains(LabelId l, const Formula& f) const { return index_.count(LabeledFormula{l, f}) > 0; }

  // Returns false when the labeled formula is already present.
  bool add(LabelId l, const Formula& f) {
    LabeledFormula lf{l, f};
    if (!index_.insert(lf).second) return false;
    formulas_.push_back(std::move(lf));
    expanded_flags_.push_back(0);
    by_label_[l].push_back(formulas_.size() - 1);
    ++version_;
    return true;
  }

  std::string render(std::size_t formula_index) const {
    const auto& lf = formulas_.at(formula_index);
    return label_name(lf.label) + " : " + pretty_print(lf.formula);
  }

  // ---- one-shot rule bookkeeping ----

  bool is_expanded(std::size_t formula_index) const { return expanded_flags_.at(formula_index) != 0; }
  void mark_expanded(std::size_t formula_index) {
    if (is_expanded(formula_index)) throw PreconditionError("formula already expanded on this branch");
    expanded_flags_[formula_index] = 1;
    expanded_log_.push_back(formula_index);
  }

  // ---- equations ----

  const std::vector<Equation>& equations() const noexcept { return equations_; }
  const std::vector<Equation>& inequations() const noexcept { return inequations_; }

  bool add_equation(const Equation& e) { return push_unique(equations_, e); }
  bool add_inequation(const Equation& e) { return push_unique(inequations_, e); }

  // ---- explicit closure (a rule found no possible execution) ----

  const std::optional<std::string>& closed_reason() const noexcept { return closed_reason_; }
  void mark_closed(std::string reason) {
    if (!closed_reason_) closed_reason_ = std::move(reason);
  }

  // ---- trail ----

  Mark mark() const {
    return {labels_.size(), formulas_.size(), equations_.size(), inequations_.size(), expanded_log_.size(),
            closed_reason_};
  }

  void undo(const Mark& m) {
    while (expanded_log_.size() > m.expanded) {
      std::size_t i = expanded_log_.back();
      expanded_log_.pop_back();
      if (i < expanded_flags_.size()) expanded_flags_[i] = 0;
    }
    while (formulas_.size() > m.formulas) {
      const auto& lf = formulas_.back();
      by_label_[lf.label].pop_back();
      index_.erase(lf);
      formulas_.pop_back();
      expanded_flags_.pop_back();
    }
    while (labels_.size() > m.labels) {
      const auto& node = labels_.back();
      children_[node.parent].pop_back();
      child_index_.erase(child_key(node.parent, node.atom));
      children_.pop_back();
      by_label_.pop_back();
      labels_.pop_back();
    }
    equations_.erase(equations_.begin() + static_cast<std::ptrdiff_t>(m.equations), equations_.end());
    inequations_.erase(inequations_.begin() + static_cast<std::ptrdiff_t>(m.inequations), inequations_.end());
    closed_reason_ = m.closed_reason;
    ++version_;
  }

  // Bumped on every change; used to cache derived data such as EQ*.
  std::uint64_t version() const noexcept { return version_; }

 private:
  struct LabelNode {
    LabelId parent;
    AtomId atom;
    std::size_t depth;
  };

  static std::uint64_t child_key(LabelId parent, AtomId a) {
    return (static_cast<std::uint64_t>(parent) << 32) | a.bits;
  }

  bool push_unique(std::vector<Equation>& v, const Equation& e) {
    for (const auto& x : v)
      if (x == e) return false;
    v.push_back(e);
    ++version_;
    return true;
  }

  Vocabulary vocab_;
  Formula root_;
  std::vector<LabelNode> labels_;
  std::vector<std::vector<LabelId>> children_;
  std::unordered_map<std::uint64_t, LabelId> child_index_;
  std::vector<LabeledFormula> formulas_;
  std::vector<std::vector<std::size_t>> by_label_;
  std::unordered_set<LabeledFormula, LabeledFormulaHash> index_;
  std::vector<char> expanded_flags_;
  std::vector<std::size_t> expanded_log_;
  std::vector<Equation> equations_;
  std::vector<Equation> inequations_;
  std::optional<std::string> closed_reason_;
  std::uint64_t version_ = 0;
};

}  // namespace dpl

#endif  // DPL_TABLEAU_BRANCH_HPP_
