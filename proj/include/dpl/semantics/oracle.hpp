#ifndef DPL_SEMANTICS_ORACLE_HPP_
#define DPL_SEMANTICS_ORACLE_HPP_

// Brute-force satisfiability on small tree structures, independent of the
// tableau. Events range over subsets of the atoms of the vocabulary; worlds
// are built bottom-up one level at a time and subtrees that agree on every
// formula that can be asked of them at that level are kept only once.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dpl/algebra.hpp"
#include "dpl/errors.hpp"
#include "dpl/semantics/structure.hpp"
#include "dpl/syntax/metrics.hpp"
#include "dpl/syntax/vocabulary.hpp"

namespace dpl {

enum class OracleVerdict { Satisfiable, Unsatisfiable };

struct OracleLimits {
  std::size_t max_actions = 3;
  std::size_t max_propositions = 3;
  std::size_t max_degree = 3;
};

namespace detail {

class BoundedSearch {
 public:
  BoundedSearch(const Formula& f, const Vocabulary& vocab) : f_(f), vocab_(vocab) {
    for (const auto& p : propositions(f)) prop_index_.emplace(p, props_.size()), props_.push_back(p);
    depth_ = degree(f);
    out_degree_ = std::max<std::size_t>(1, existential_degree(f));
    levels_.resize(depth_ + 1);
    levels_[0].insert(f);
    for (std::size_t k = 0; k < depth_; ++k)
      for (const auto& q : levels_[k].items) collect_bodies(q, levels_[k + 1]);
    for (std::size_t k = 0; k <= depth_; ++k) {
      index_.emplace_back();
      for (std::size_t i = 0; i < levels_[k].size(); ++i) index_[k].emplace(levels_[k].items[i], i);
    }
    collect_relevant(f);
  }

  std::optional<VStructure> run() {
    const std::uint32_t n_atoms = static_cast<std::uint32_t>(atom_count(vocab_.size()));
    for (std::uint32_t subset = 1; subset < (1U << n_atoms); ++subset) {
      events_.clear();
      for (std::uint32_t i = 0; i < n_atoms; ++i)
        if ((subset >> i) & 1U) events_.push_back(i + 1);
      event_mask_ = 0;
      for (std::uint32_t a : events_) event_mask_ |= 1U << a;
      if (auto m = search()) return m;
    }
    return std::nullopt;
  }

 private:
  struct Rep {
    std::uint32_t props = 0;
    std::uint32_t perms = 0;  // atom-bit mask
    std::vector<std::pair<std::uint32_t, std::size_t>> children;  // (atom, rep at next level)
    std::vector<bool> profile;
  };

  void collect_bodies(const Formula& g, FormulaSet& out) {
    using K = Formula::Kind;
    switch (g.kind()) {
      case K::Box:
      case K::Diamond: out.insert(g.body()); break;
      case K::Not: collect_bodies(g.operand(), out); break;
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff:
        collect_bodies(g.lhs(), out);
        collect_bodies(g.rhs(), out);
        break;
      default: break;
    }
  }

  void collect_relevant(const Formula& g) {
    using K = Formula::Kind;
    switch (g.kind()) {
      case K::PermS:
      case K::PermW: relevant_ |= mask_of(g.action()); break;
      case K::Not: collect_relevant(g.operand()); break;
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff:
        collect_relevant(g.lhs());
        collect_relevant(g.rhs());
        break;
      case K::Box:
      case K::Diamond: collect_relevant(g.body()); break;
      default: break;
    }
  }

  // Atoms below a term as a bit mask indexed by atom bits.
  std::uint32_t mask_of(const ActionTerm& t) {
    auto it = masks_.find(t);
    if (it != masks_.end()) return it->second;
    std::uint32_t mask = 0;
    for (AtomId a : denote(t, vocab_).atoms()) mask |= 1U << a.bits;
    masks_.emplace(t, mask);
    return mask;
  }

  bool eval(const Formula& g, std::size_t level, const Rep& w) {
    using K = Formula::Kind;
    switch (g.kind()) {
      case K::True: return true;
      case K::False: return false;
      case K::Prop: return (w.props >> prop_index_.at(g.name())) & 1U;
      case K::Not: return !eval(g.operand(), level, w);
      case K::And: return eval(g.lhs(), level, w) && eval(g.rhs(), level, w);
      case K::Or: return eval(g.lhs(), level, w) || eval(g.rhs(), level, w);
      case K::Implies: return !eval(g.lhs(), level, w) || eval(g.rhs(), level, w);
      case K::Iff: return eval(g.lhs(), level, w) == eval(g.rhs(), level, w);
      case K::PermS: {
        std::uint32_t es = mask_of(g.action()) & event_mask_;
        return (es & w.perms) == es;
      }
      case K::PermW: return (mask_of(g.action()) & event_mask_ & w.perms) != 0;
      case K::Eq: return ((mask_of(g.left_term()) ^ mask_of(g.right_term())) & event_mask_) == 0;
      case K::Neq: return ((mask_of(g.left_term()) ^ mask_of(g.right_term())) & event_mask_) != 0;
      case K::Box:
      case K::Diamond: {
        const bool box = g.is(K::Box);
        if (level >= depth_) return box;
        const std::uint32_t es = mask_of(g.action());
        const std::size_t body = index_[level + 1].at(g.body());
        for (const auto& [atom, child] : w.children) {
          if (!((es >> atom) & 1U)) continue;
          bool v = reps_[level + 1][child].profile[body];
          if (box && !v) return false;
          if (!box && v) return true;
        }
        return box;
      }
    }
    return false;
  }

  void consider(std::size_t level, Rep w, std::map<std::vector<bool>, std::size_t>& seen) {
    w.profile.resize(levels_[level].size());
    for (std::size_t i = 0; i < levels_[level].size(); ++i) w.profile[i] = eval(levels_[level].items[i], level, w);
    if (seen.emplace(w.profile, reps_[level].size()).second) reps_[level].push_back(std::move(w));
  }

  std::optional<VStructure> search() {
    reps_.assign(depth_ + 1, {});
    std::vector<std::uint32_t> perm_events;
    for (std::uint32_t a : events_)
      if ((relevant_ >> a) & 1U) perm_events.push_back(a);

    for (std::size_t level = depth_ + 1; level-- > 0;) {
      std::map<std::vector<bool>, std::size_t> seen;
      std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> child_options{{}};
      if (level < depth_ && !levels_[level + 1].items.empty()) child_options = children_choices(level + 1);
      for (std::uint32_t props = 0; props < (1U << props_.size()); ++props)
        for (std::uint32_t pick = 0; pick < (1U << perm_events.size()); ++pick) {
          std::uint32_t perms = 0;
          for (std::size_t i = 0; i < perm_events.size(); ++i)
            if ((pick >> i) & 1U) perms |= 1U << perm_events[i];
          for (const auto& ch : child_options) consider(level, Rep{props, perms, ch, {}}, seen);
        }
    }
    for (std::size_t r = 0; r < reps_[0].size(); ++r)
      if (reps_[0][r].profile[0]) return build(r);
    return std::nullopt;
  }

  // Every way of giving a world at most out_degree_ children, each on its own
  // event and each a representative of the next level.
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> children_choices(std::size_t next) {
    std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> out;
    std::vector<std::pair<std::uint32_t, std::size_t>> cur;
    const std::size_t reps = reps_[next].size();
    std::function<void(std::size_t)> go = [&](std::size_t from) {
      out.push_back(cur);
      if (cur.size() == out_degree_) return;
      for (std::size_t e = from; e < events_.size(); ++e)
        for (std::size_t r = 0; r < reps; ++r) {
          cur.emplace_back(events_[e], r);
          go(e + 1);
          cur.pop_back();
        }
    };
    go(0);
    return out;
  }

  VStructure build(std::size_t root) {
    VStructure m;
    std::map<std::uint32_t, std::size_t> event_of;
    for (std::uint32_t a : events_) {
      event_of[a] = m.events.size();
      m.events.push_back(atom_name(AtomId{a}, vocab_));
    }
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      auto& es = m.interp_actions[vocab_.actions()[i]];
      for (std::uint32_t a : events_)
        if (AtomId{a}.contains(i)) es.insert(event_of[a]);
    }
    for (const auto& p : props_) m.interp_props[p];
    std::function<std::size_t(std::size_t, std::size_t)> place = [&](std::size_t level, std::size_t r) {
      const Rep& w = reps_[level][r];
      std::size_t id = m.worlds.size();
      m.worlds.push_back("w" + std::to_string(id));
      for (std::size_t i = 0; i < props_.size(); ++i)
        if ((w.props >> i) & 1U) m.interp_props[props_[i]].insert(id);
      for (std::uint32_t a : events_)
        if ((w.perms >> a) & 1U) m.permitted.insert({id, event_of[a]});
      for (const auto& [atom, child] : w.children) {
        std::size_t to = place(level + 1, child);
        m.transitions.insert({id, event_of[atom], to});
      }
      return id;
    };
    place(0, root);
    if (!satisfies(m, 0, f_)) throw std::logic_error("bounded search built a structure that does not satisfy its formula");
    return m;
  }

  Formula f_;
  const Vocabulary& vocab_;
  std::vector<std::string> props_;
  std::unordered_map<std::string, std::size_t> prop_index_;
  std::size_t depth_ = 0;
  std::size_t out_degree_ = 1;
  std::vector<FormulaSet> levels_;
  std::vector<std::unordered_map<Formula, std::size_t, FormulaHash>> index_;
  std::unordered_map<ActionTerm, std::uint32_t, ActionTermHash> masks_;
  std::uint32_t relevant_ = 0;
  std::vector<std::uint32_t> events_;
  std::uint32_t event_mask_ = 0;
  std::vector<std::vector<Rep>> reps_;
};

}  // namespace detail

// A satisfying tree structure for f over the vocabulary, if one exists within
// depth degree(f) and out-degree max(1, existential degree).
inline std::optional<VStructure> bounded_sat_model(const Formula& f, const Vocabulary& vocab, OracleLimits limits = {}) {
  if (vocab.size() > limits.max_actions) throw ResourceError("oracle supports at most " + std::to_string(limits.max_actions) + " actions");
  if (propositions(f).size() > limits.max_propositions)
    throw ResourceError("oracle supports at most " + std::to_string(limits.max_propositions) + " propositions");
  if (degree(f) > limits.max_degree) throw ResourceError("oracle supports modal degree at most " + std::to_string(limits.max_degree));
  for (const auto& a : primitive_actions(f))
    if (!vocab.has_action(a)) throw VocabularyError("undeclared action '" + a + "'");
  return detail::BoundedSearch(f, vocab).run();
}

inline OracleVerdict bounded_sat_oracle(const Formula& f, const Vocabulary& vocab, OracleLimits limits = {}) {
  return bounded_sat_model(f, vocab, limits) ? OracleVerdict::Satisfiable : OracleVerdict::Unsatisfiable;
}

}  // namespace dpl

#endif  // DPL_SEMANTICS_ORACLE_HPP_
