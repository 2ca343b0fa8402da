#ifndef DPL_ALGEBRA_HPP_
#define DPL_ALGEBRA_HPP_

// Finite boolean algebra of action terms.
//
// Over n primitive actions the algebra has 2^n - 1 atoms: every nonempty
// subset of the actions, written as a bit pattern. The empty pattern is not
// an atom because the actions jointly exhaust U (a1 + ... + an = U). A term
// denotes the set of atoms below it; an equational theory is summarised by
// the atoms it forces to be empty (the symmetric difference of each
// equation's sides), so consequence is a set inclusion check.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dpl/errors.hpp"
#include "dpl/syntax/ast.hpp"
#include "dpl/syntax/printer.hpp"
#include "dpl/syntax/vocabulary.hpp"

namespace dpl {

struct AtomId {
  std::uint32_t bits = 0;

  bool contains(std::size_t action_index) const noexcept { return (bits >> action_index) & 1U; }
  friend auto operator<=>(const AtomId&, const AtomId&) = default;
};

inline std::size_t atom_count(std::size_t num_actions) { return (std::size_t{1} << num_actions) - 1; }

// A set of atoms over a fixed number of actions.
class AtomSet {
 public:
  explicit AtomSet(std::size_t num_actions) : num_actions_(num_actions), bits_(atom_count(num_actions) + 1) {}

  static AtomSet universe(std::size_t num_actions) {
    AtomSet s(num_actions);
    s.bits_.set();
    s.bits_.reset(0);
    return s;
  }

  std::size_t num_actions() const noexcept { return num_actions_; }
  bool contains(AtomId a) const { return a.bits != 0 && a.bits < bits_.size() && bits_.test(a.bits); }
  void insert(AtomId a) { bits_.set(check(a)); }
  void erase(AtomId a) { bits_.reset(check(a)); }
  bool empty() const { return bits_.none(); }
  std::size_t count() const { return bits_.count(); }

  AtomSet& operator|=(const AtomSet& o) { bits_ |= o.bits_; return *this; }
  AtomSet& operator&=(const AtomSet& o) { bits_ &= o.bits_; return *this; }
  AtomSet& operator^=(const AtomSet& o) { bits_ ^= o.bits_; return *this; }
  AtomSet& operator-=(const AtomSet& o) { bits_ -= o.bits_; return *this; }
  friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
  friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
  friend AtomSet operator^(AtomSet a, const AtomSet& b) { return a ^= b; }
  friend AtomSet operator-(AtomSet a, const AtomSet& b) { return a -= b; }

  // Complement relative to all 2^n - 1 atoms.
  AtomSet complement() const {
    AtomSet s = *this;
    s.bits_.flip();
    s.bits_.reset(0);
    return s;
  }

  bool is_subset_of(const AtomSet& o) const { return bits_.is_subset_of(o.bits_); }

  std::vector<AtomId> atoms() const {
    std::vector<AtomId> out;
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
      out.push_back(AtomId{static_cast<std::uint32_t>(i)});
    return out;
  }

  friend bool operator==(const AtomSet& a, const AtomSet& b) { return a.bits_ == b.bits_; }

 private:
  std::size_t check(AtomId a) const {
    if (a.bits == 0 || a.bits >= bits_.size()) throw PreconditionError("atom out of range for this vocabulary");
    return a.bits;
  }

  std::size_t num_actions_;
  boost::dynamic_bitset<> bits_;
};

// A term compiled against a vocabulary for membership tests on single atoms.
class TermProgram {
 public:
  TermProgram(const ActionTerm& t, const Vocabulary& vocab) { root_ = compile(t, vocab); }

  bool contains(AtomId a) const { return eval(root_, a.bits); }

 private:
  struct Op {
    ActionTerm::Kind kind;
    std::uint32_t action = 0;
    std::size_t lhs = 0, rhs = 0;
  };

  std::size_t compile(const ActionTerm& t, const Vocabulary& vocab) {
    Op op{t.kind()};
    switch (t.kind()) {
      case ActionTerm::Kind::Prim: {
        auto idx = vocab.index_of(t.name());
        if (!idx) throw VocabularyError("undeclared action '" + t.name() + "'");
        op.action = static_cast<std::uint32_t>(*idx);
        break;
      }
      case ActionTerm::Kind::Meet:
      case ActionTerm::Kind::Join:
        op.lhs = compile(t.lhs(), vocab);
        op.rhs = compile(t.rhs(), vocab);
        break;
      case ActionTerm::Kind::Compl: op.lhs = compile(t.operand(), vocab); break;
      default: break;
    }
    ops_.push_back(op);
    return ops_.size() - 1;
  }

  bool eval(std::size_t i, std::uint32_t bits) const {
    const Op& op = ops_[i];
    switch (op.kind) {
      case ActionTerm::Kind::Prim: return (bits >> op.action) & 1U;
      case ActionTerm::Kind::Meet: return eval(op.lhs, bits) && eval(op.rhs, bits);
      case ActionTerm::Kind::Join: return eval(op.lhs, bits) || eval(op.rhs, bits);
      case ActionTerm::Kind::Compl: return !eval(op.lhs, bits);
      case ActionTerm::Kind::Empty: return false;
      case ActionTerm::Kind::Univ: return true;
    }
    return false;
  }

  std::vector<Op> ops_;
  std::size_t root_ = 0;
};

namespace detail {

inline AtomSet action_atoms(std::size_t index, std::size_t n) {
  AtomSet s(n);
  for (std::uint32_t bits = 1; bits <= atom_count(n); ++bits)
    if ((bits >> index) & 1U) s.insert(AtomId{bits});
  return s;
}

}  // namespace detail

// Homomorphic image of a term: primitives map to the atoms containing them.
inline AtomSet denote(const ActionTerm& t, const Vocabulary& vocab) {
  const std::size_t n = vocab.size();
  switch (t.kind()) {
    case ActionTerm::Kind::Prim: {
      auto idx = vocab.index_of(t.name());
      if (!idx) throw VocabularyError("undeclared action '" + t.name() + "'");
      return detail::action_atoms(*idx, n);
    }
    case ActionTerm::Kind::Meet: return denote(t.lhs(), vocab) & denote(t.rhs(), vocab);
    case ActionTerm::Kind::Join: return denote(t.lhs(), vocab) | denote(t.rhs(), vocab);
    case ActionTerm::Kind::Compl: return denote(t.operand(), vocab).complement();
    case ActionTerm::Kind::Empty: return AtomSet(n);
    case ActionTerm::Kind::Univ: return AtomSet::universe(n);
  }
  return AtomSet(n);
}

// Canonical meet of literals naming a single atom, e.g. "a & !b".
inline ActionTerm atom_term(AtomId atom, const Vocabulary& vocab) {
  if (atom.bits == 0 || atom.bits > atom_count(vocab.size()))
    throw PreconditionError("atom out of range for this vocabulary");
  std::optional<ActionTerm> out;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    ActionTerm lit = ActionTerm::prim(vocab.actions()[i]);
    if (!atom.contains(i)) lit = ActionTerm::compl_of(std::move(lit));
    out = out ? ActionTerm::meet(std::move(*out), std::move(lit)) : std::move(lit);
  }
  return *out;
}

inline std::string atom_name(AtomId atom, const Vocabulary& vocab) { return to_string(atom_term(atom, vocab)); }

struct Equation {
  ActionTerm lhs;
  ActionTerm rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

// Boolean algebra over a vocabulary modulo a finite set of equations.
class BooleanTheory {
 public:
  explicit BooleanTheory(Vocabulary vocab)
      : vocab_(std::make_shared<const Vocabulary>(std::move(vocab))), forced_empty_(vocab_->size()) {}

  const Vocabulary& vocabulary() const noexcept { return *vocab_; }
  const std::vector<Equation>& equations() const noexcept { return equations_; }
  const AtomSet& forced_empty() const noexcept { return forced_empty_; }

  BooleanTheory add_equation(const ActionTerm& lhs, const ActionTerm& rhs) const {
    BooleanTheory next = *this;
    next.forced_empty_ |= denote(lhs, *vocab_) ^ denote(rhs, *vocab_);
    next.equations_.push_back({lhs, rhs});
    return next;
  }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<Equation> equations_;
  AtomSet forced_empty_;
};

inline BooleanTheory add_equation(const BooleanTheory& theory, const ActionTerm& lhs, const ActionTerm& rhs) {
  return theory.add_equation(lhs, rhs);
}

// Equality in the quotient algebra.
inline bool proves_equal(const BooleanTheory& theory, const ActionTerm& lhs, const ActionTerm& rhs) {
  const auto& v = theory.vocabulary();
  return (denote(lhs, v) ^ denote(rhs, v)).is_subset_of(theory.forced_empty());
}

// Every atom is forced empty, so the theory proves 0 = U.
inline bool is_inconsistent(const BooleanTheory& theory) {
  return theory.forced_empty().count() == atom_count(theory.vocabulary().size());
}

// Ascending atoms below a term that the theory does not force empty. Atoms
// are produced one at a time; the denotation is never materialised.
class AtomRange {
 public:
  AtomRange(const BooleanTheory& theory, const ActionTerm& term)
      : program_(std::make_shared<const TermProgram>(term, theory.vocabulary())),
        forced_(std::make_shared<const AtomSet>(theory.forced_empty())),
        last_(static_cast<std::uint32_t>(atom_count(theory.vocabulary().size()))) {}

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = AtomId;
    using difference_type = std::ptrdiff_t;
    using pointer = const AtomId*;
    using reference = AtomId;

    iterator() = default;
    iterator(const AtomRange* range, std::uint32_t bits) : range_(range), bits_(bits) { settle(); }

    AtomId operator*() const { return AtomId{bits_}; }
    iterator& operator++() {
      ++bits_;
      settle();
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.bits_ == b.bits_; }

   private:
    void settle() {
      while (bits_ <= range_->last_ && !range_->accepts(AtomId{bits_})) ++bits_;
    }
    const AtomRange* range_ = nullptr;
    std::uint32_t bits_ = 0;
  };

  iterator begin() const { return iterator(this, 1); }
  iterator end() const { return iterator(this, last_ + 1); }

  bool accepts(AtomId a) const { return program_->contains(a) && !forced_->contains(a); }

  std::vector<AtomId> to_vector() const { return {begin(), end()}; }

 private:
  std::shared_ptr<const TermProgram> program_;
  std::shared_ptr<const AtomSet> forced_;
  std::uint32_t last_;
};

inline AtomRange atoms_below(const BooleanTheory& theory, const ActionTerm& term) { return AtomRange(theory, term); }

// The unique surviving atom below `term`, if there is exactly one.
inline std::optional<AtomId> as_atom(const BooleanTheory& theory, const ActionTerm& term) {
  std::optional<AtomId> found;
  for (AtomId a : atoms_below(theory, term)) {
    if (found) return std::nullopt;
    found = a;
  }
  return found;
}

}  // namespace dpl

#endif  // DPL_ALGEBRA_HPP_
