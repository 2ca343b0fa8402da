#ifndef DPL_SYNTAX_AST_HPP_
#define DPL_SYNTAX_AST_HPP_

#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace dpl {

namespace detail {

inline std::size_t hash_mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace detail

// Boolean action term. Immutable; copies share structure.
class ActionTerm {
 public:
  enum class Kind : std::uint8_t { Prim, Meet, Join, Compl, Empty, Univ };

  static ActionTerm prim(std::string name) { return ActionTerm(Kind::Prim, std::move(name), {}, {}); }
  static ActionTerm meet(ActionTerm l, ActionTerm r) { return ActionTerm(Kind::Meet, {}, std::move(l), std::move(r)); }
  static ActionTerm join(ActionTerm l, ActionTerm r) { return ActionTerm(Kind::Join, {}, std::move(l), std::move(r)); }
  static ActionTerm compl_of(ActionTerm t) { return ActionTerm(Kind::Compl, {}, std::move(t), {}); }
  static ActionTerm empty() { return ActionTerm(Kind::Empty, {}, {}, {}); }
  static ActionTerm univ() { return ActionTerm(Kind::Univ, {}, {}, {}); }

  Kind kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  const ActionTerm& lhs() const noexcept { return *node_->lhs; }
  const ActionTerm& rhs() const noexcept { return *node_->rhs; }
  const ActionTerm& operand() const noexcept { return *node_->lhs; }
  std::size_t hash() const noexcept { return node_->hash; }
  std::size_t size() const noexcept { return node_->size; }

  friend bool operator==(const ActionTerm& a, const ActionTerm& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Prim: return a.name() == b.name();
      case Kind::Meet:
      case Kind::Join: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
      case Kind::Compl: return a.operand() == b.operand();
      default: return true;
    }
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const ActionTerm> lhs, rhs;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  // Default-constructed terms only exist transiently as "absent child".
  ActionTerm() = default;

  ActionTerm(Kind kind, std::string name, ActionTerm l, ActionTerm r) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->name = std::move(name);
    n->hash = detail::hash_mix(static_cast<std::size_t>(kind) + 1, std::hash<std::string>{}(n->name));
    if (l.node_) {
      n->size += l.size();
      n->hash = detail::hash_mix(n->hash, l.hash());
      n->lhs = std::make_shared<const ActionTerm>(std::move(l));
    }
    if (r.node_) {
      n->size += r.size();
      n->hash = detail::hash_mix(n->hash, r.hash() * 31);
      n->rhs = std::make_shared<const ActionTerm>(std::move(r));
    }
    node_ = std::move(n);
  }

  std::shared_ptr<const Node> node_;
};

// Formula over action terms. Diamond, And, Or, Iff, True and False are kept
// as first-class nodes rather than desugared.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    Prop, Not, Implies, And, Or, Iff, Box, Diamond, PermS, PermW, Eq, Neq, True, False
  };

  static Formula prop(std::string name) { return Formula(Kind::Prop, std::move(name)); }
  static Formula truth() { return Formula(Kind::True, {}); }
  static Formula falsity() { return Formula(Kind::False, {}); }
  static Formula negation(Formula f) { return Formula(Kind::Not, {}, std::move(f)); }
  static Formula implies(Formula l, Formula r) { return Formula(Kind::Implies, {}, std::move(l), std::move(r)); }
  static Formula conj(Formula l, Formula r) { return Formula(Kind::And, {}, std::move(l), std::move(r)); }
  static Formula disj(Formula l, Formula r) { return Formula(Kind::Or, {}, std::move(l), std::move(r)); }
  static Formula iff(Formula l, Formula r) { return Formula(Kind::Iff, {}, std::move(l), std::move(r)); }
  static Formula box(ActionTerm a, Formula f) { return Formula(Kind::Box, {}, std::move(f), {}, std::move(a)); }
  static Formula diamond(ActionTerm a, Formula f) { return Formula(Kind::Diamond, {}, std::move(f), {}, std::move(a)); }
  static Formula perm_strong(ActionTerm a) { return Formula(Kind::PermS, {}, {}, {}, std::move(a)); }
  static Formula perm_weak(ActionTerm a) { return Formula(Kind::PermW, {}, {}, {}, std::move(a)); }
  static Formula equal(ActionTerm l, ActionTerm r) { return Formula(Kind::Eq, {}, {}, {}, std::move(l), std::move(r)); }
  static Formula not_equal(ActionTerm l, ActionTerm r) {
    return Formula(Kind::Neq, {}, {}, {}, std::move(l), std::move(r));
  }

  Kind kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  // Not: operand(); binary connectives: lhs()/rhs(); Box/Diamond: action() and body().
  const Formula& operand() const noexcept { return *node_->lhs; }
  const Formula& lhs() const noexcept { return *node_->lhs; }
  const Formula& rhs() const noexcept { return *node_->rhs; }
  const Formula& body() const noexcept { return *node_->lhs; }
  // Box/Diamond/PermS/PermW: action(); Eq/Neq: left_term()/right_term().
  const ActionTerm& action() const noexcept { return *node_->t1; }
  const ActionTerm& left_term() const noexcept { return *node_->t1; }
  const ActionTerm& right_term() const noexcept { return *node_->t2; }
  std::size_t hash() const noexcept { return node_->hash; }
  // Number of AST nodes, counting action-term nodes.
  std::size_t size() const noexcept { return node_->size; }

  bool is(Kind k) const noexcept { return kind() == k; }
  bool is_not(Kind k) const noexcept { return kind() == Kind::Not && operand().kind() == k; }
  bool is_modal() const noexcept { return kind() == Kind::Box || kind() == Kind::Diamond; }
  bool is_deontic() const noexcept { return kind() == Kind::PermS || kind() == Kind::PermW; }
  bool is_equation() const noexcept { return kind() == Kind::Eq || kind() == Kind::Neq; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind() || a.name() != b.name()) return false;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    auto same_f = [](const auto& p, const auto& q) { return (!p && !q) || (p && q && *p == *q); };
    return same_f(x.lhs, y.lhs) && same_f(x.rhs, y.rhs) && same_f(x.t1, y.t1) && same_f(x.t2, y.t2);
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Formula> lhs, rhs;
    std::shared_ptr<const ActionTerm> t1, t2;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  Formula() = default;

  Formula(Kind kind, std::string name, Formula l = {}, Formula r = {}, std::optional<ActionTerm> t1 = {},
          std::optional<ActionTerm> t2 = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->name = std::move(name);
    n->hash = detail::hash_mix(static_cast<std::size_t>(kind) + 101, std::hash<std::string>{}(n->name));
    if (l.node_) {
      n->size += l.size();
      n->hash = detail::hash_mix(n->hash, l.hash());
      n->lhs = std::make_shared<const Formula>(std::move(l));
    }
    if (r.node_) {
      n->size += r.size();
      n->hash = detail::hash_mix(n->hash, r.hash() * 31);
      n->rhs = std::make_shared<const Formula>(std::move(r));
    }
    if (t1) {
      n->size += t1->size();
      n->hash = detail::hash_mix(n->hash, t1->hash() * 7);
      n->t1 = std::make_shared<const ActionTerm>(std::move(*t1));
    }
    if (t2) {
      n->size += t2->size();
      n->hash = detail::hash_mix(n->hash, t2->hash() * 13);
      n->t2 = std::make_shared<const ActionTerm>(std::move(*t2));
    }
    node_ = std::move(n);
  }

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};
struct ActionTermHash {
  std::size_t operator()(const ActionTerm& t) const noexcept { return t.hash(); }
};

}  // namespace dpl

#endif  // DPL_SYNTAX_AST_HPP_
