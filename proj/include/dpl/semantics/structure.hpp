#ifndef DPL_SEMANTICS_STRUCTURE_HPP_
#define DPL_SEMANTICS_STRUCTURE_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dpl/errors.hpp"
#include "dpl/syntax/ast.hpp"

namespace dpl {

struct Transition {
  std::size_t from;
  std::size_t event;
  std::size_t to;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// A finite structure: worlds, events, a transition relation labelled by
// events, a permission relation on (world, event) pairs, and interpretations
// of actions (as event sets) and propositions (as world sets). Worlds and
// events are referred to by index; the names are only for display.
struct VStructure {
  std::vector<std::string> worlds;
  std::vector<std::string> events;
  std::set<Transition> transitions;
  std::set<std::pair<std::size_t, std::size_t>> permitted;  // (world, event)
  std::map<std::string, std::set<std::size_t>> interp_actions;
  std::map<std::string, std::set<std::size_t>> interp_props;

  friend bool operator==(const VStructure&, const VStructure&) = default;
};

using EventSet = std::set<std::size_t>;

struct Violation {
  std::string condition;  // "functionality", "I.1", "I.2", "I.3", "nonempty", "index"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string to_string() const {
    std::string out;
    for (const auto& v : violations) out += v.condition + ": " + v.detail + "\n";
    return out;
  }
};

namespace detail {

inline std::string event_list(const VStructure& m, const std::vector<std::size_t>& es) {
  std::string out;
  for (std::size_t e : es) {
    if (!out.empty()) out += ", ";
    out += e < m.events.size() ? m.events[e] : "#" + std::to_string(e);
  }
  return "{" + out + "}";
}

}  // namespace detail

// Checks the structural conditions. I.2 is checked per membership cell: two
// distinct events may not belong to exactly the same set of two or more
// actions (I.1 already covers the single-action cells).
inline ValidationReport validate_structure(const VStructure& m) {
  ValidationReport r;
  const std::size_t nw = m.worlds.size(), ne = m.events.size();
  auto bad = [&](std::string c, std::string d) { r.violations.push_back({std::move(c), std::move(d)}); };

  if (ne == 0) bad("nonempty", "the event set is empty");
  for (const auto& t : m.transitions)
    if (t.from >= nw || t.to >= nw || t.event >= ne) bad("index", "transition refers to an unknown world or event");
  for (const auto& [w, e] : m.permitted)
    if (w >= nw || e >= ne) bad("index", "permission refers to an unknown world or event");
  for (const auto& [a, es] : m.interp_actions)
    for (std::size_t e : es)
      if (e >= ne) bad("index", "action '" + a + "' contains an unknown event");
  for (const auto& [p, ws] : m.interp_props)
    for (std::size_t w : ws)
      if (w >= nw) bad("index", "proposition '" + p + "' holds at an unknown world");
  if (!r.ok()) return r;

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> target;
  for (const auto& t : m.transitions) {
    auto [it, fresh] = target.emplace(std::pair{t.from, t.event}, t.to);
    if (!fresh && it->second != t.to)
      bad("functionality", "world " + m.worlds[t.from] + " has two successors under event " + m.events[t.event]);
  }

  std::vector<std::set<std::string>> members(ne);
  for (const auto& [a, es] : m.interp_actions)
    for (std::size_t e : es) members[e].insert(a);

  for (const auto& [a, es] : m.interp_actions) {
    std::vector<std::size_t> exclusive;
    for (std::size_t e : es)
      if (members[e].size() == 1) exclusive.push_back(e);
    if (exclusive.size() > 1)
      bad("I.1", "action '" + a + "' has several exclusive events " + detail::event_list(m, exclusive));
  }

  std::map<std::set<std::string>, std::vector<std::size_t>> cells;
  for (std::size_t e = 0; e < ne; ++e)
    if (members[e].size() >= 2) cells[members[e]].push_back(e);
  for (const auto& [acts, es] : cells)
    if (es.size() > 1) bad("I.2", "events " + detail::event_list(m, es) + " share the same actions");

  for (std::size_t e = 0; e < ne; ++e)
    if (members[e].empty()) bad("I.3", "event " + m.events[e] + " belongs to no action");
  return r;
}

// Evaluates terms and formulae on one structure. Building it indexes the
// transition relation once; evaluation afterwards is read-only.
class Evaluator {
 public:
  explicit Evaluator(const VStructure& m) : m_(m), succ_(m.worlds.size()) {
    for (const auto& t : m.transitions) succ_[t.from].emplace_back(t.event, t.to);
  }

  const VStructure& structure() const noexcept { return m_; }

  boost::dynamic_bitset<> events_of(const ActionTerm& t) const {
    using K = ActionTerm::Kind;
    const std::size_t ne = m_.events.size();
    switch (t.kind()) {
      case K::Prim: {
        auto it = m_.interp_actions.find(t.name());
        if (it == m_.interp_actions.end()) throw VocabularyError("undeclared action '" + t.name() + "'");
        boost::dynamic_bitset<> s(ne);
        for (std::size_t e : it->second) s.set(e);
        return s;
      }
      case K::Meet: return events_of(t.lhs()) & events_of(t.rhs());
      case K::Join: return events_of(t.lhs()) | events_of(t.rhs());
      case K::Compl: return ~events_of(t.operand());
      case K::Empty: return boost::dynamic_bitset<>(ne);
      case K::Univ: return ~boost::dynamic_bitset<>(ne);
    }
    return boost::dynamic_bitset<>(ne);
  }

  bool holds(std::size_t w, const Formula& f) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True: return true;
      case K::False: return false;
      case K::Prop: {
        auto it = m_.interp_props.find(f.name());
        return it != m_.interp_props.end() && it->second.count(w) > 0;
      }
      case K::Not: return !holds(w, f.operand());
      case K::And: return holds(w, f.lhs()) && holds(w, f.rhs());
      case K::Or: return holds(w, f.lhs()) || holds(w, f.rhs());
      case K::Implies: return !holds(w, f.lhs()) || holds(w, f.rhs());
      case K::Iff: return holds(w, f.lhs()) == holds(w, f.rhs());
      case K::Box:
      case K::Diamond: {
        auto es = events_of(f.action());
        bool box = f.is(K::Box);
        for (const auto& [e, to] : succ_[w]) {
          if (!es.test(e)) continue;
          bool v = holds(to, f.body());
          if (box && !v) return false;
          if (!box && v) return true;
        }
        return box;
      }
      case K::PermS:
      case K::PermW: {
        auto es = events_of(f.action());
        bool strong = f.is(K::PermS);
        for (auto e = es.find_first(); e != boost::dynamic_bitset<>::npos; e = es.find_next(e)) {
          bool p = m_.permitted.count({w, e}) > 0;
          if (strong && !p) return false;
          if (!strong && p) return true;
        }
        return strong;
      }
      case K::Eq: return events_of(f.left_term()) == events_of(f.right_term());
      case K::Neq: return events_of(f.left_term()) != events_of(f.right_term());
    }
    return false;
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& successors(std::size_t w) const { return succ_.at(w); }

 private:
  const VStructure& m_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> succ_;  // (event, to)
};

inline EventSet interpret_term(const VStructure& m, const ActionTerm& t) {
  auto bits = Evaluator(m).events_of(t);
  EventSet out;
  for (auto e = bits.find_first(); e != boost::dynamic_bitset<>::npos; e = bits.find_next(e)) out.insert(e);
  return out;
}

inline bool satisfies(const VStructure& m, std::size_t w, const Formula& f) {
  if (w >= m.worlds.size()) throw PreconditionError("unknown world");
  return Evaluator(m).holds(w, f);
}

inline std::optional<std::size_t> world_index(const VStructure& m, const std::string& name) {
  for (std::size_t i = 0; i < m.worlds.size(); ++i)
    if (m.worlds[i] == name) return i;
  return std::nullopt;
}

inline std::optional<std::size_t> event_index(const VStructure& m, const std::string& name) {
  for (std::size_t i = 0; i < m.events.size(); ++i)
    if (m.events[i] == name) return i;
  return std::nullopt;
}

}  // namespace dpl

#endif  // DPL_SEMANTICS_STRUCTURE_HPP_
