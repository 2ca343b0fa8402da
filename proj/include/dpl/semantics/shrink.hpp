#ifndef DPL_SEMANTICS_SHRINK_HPP_
#define DPL_SEMANTICS_SHRINK_HPP_

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpl/errors.hpp"
#include "dpl/semantics/structure.hpp"
#include "dpl/syntax/metrics.hpp"

namespace dpl {

// Worlds reachable from w with their distance, or nullopt when some world is
// reached twice (the part of M below w is not a tree).
inline std::optional<std::map<std::size_t, std::size_t>> tree_depths(const VStructure& m, std::size_t w) {
  if (w >= m.worlds.size()) throw PreconditionError("unknown world");
  Evaluator ev(m);
  std::map<std::size_t, std::size_t> depth{{w, 0}};
  std::deque<std::size_t> queue{w};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& [e, to] : ev.successors(v)) {
      if (!depth.emplace(to, depth[v] + 1).second) return std::nullopt;
      queue.push_back(to);
    }
  }
  return depth;
}

inline bool is_tree_shaped(const VStructure& m, std::size_t w) { return tree_depths(m, w).has_value(); }

struct ReachLabeling {
  std::map<std::size_t, FormulaSet> labels;   // world -> members of SF(f, k) true there
  std::map<std::size_t, std::size_t> levels;  // world -> k
};

// For each world v reached from w in k <= degree(f) steps, the members of
// SF(f, k) that hold at v.
inline ReachLabeling reach_labeling(const VStructure& m, std::size_t w, const Formula& f) {
  if (!is_normal_form(f)) throw PreconditionError("reach_labeling needs a formula in normal form");
  auto depths = tree_depths(m, w);
  if (!depths) throw PreconditionError("structure is not a tree below the given world");
  const std::size_t n = degree(f);
  std::vector<FormulaSet> sf;
  for (std::size_t k = 0; k <= n; ++k) sf.push_back(subformulae_at_level(f, k));
  Evaluator ev(m);
  ReachLabeling out;
  for (const auto& [v, k] : *depths) {
    if (k > n) continue;
    FormulaSet& label = out.labels[v];
    out.levels[v] = k;
    for (const auto& g : sf[k].items)
      if (ev.holds(v, g)) label.insert(g);
  }
  return out;
}

// Keeps one witnessing transition for every existential obligation and drops
// everything else. Obligations start as nnf(f) at w; a diamond picks the
// first successor that satisfies its body, a box passes its body to every
// kept successor, and a disjunction follows its first true side.
inline VStructure shrink_model(const VStructure& m, std::size_t w, const Formula& f) {
  if (!is_normal_form(f)) throw PreconditionError("shrink_model needs a formula in normal form");
  if (!is_tree_shaped(m, w)) throw PreconditionError("structure is not a tree below the given world");
  Evaluator ev(m);
  if (!ev.holds(w, f)) throw PreconditionError("the formula does not hold at the given world");

  std::vector<FormulaSet> obligations(m.worlds.size());
  obligations[w].insert(nnf(f));
  std::vector<std::size_t> kept_worlds;
  std::set<Transition> kept_edges;
  std::deque<std::size_t> queue{w};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    kept_worlds.push_back(v);
    std::vector<Formula> todo = obligations[v].items, boxes;
    std::vector<std::pair<std::size_t, std::size_t>> children;  // (event, to)
    auto keep = [&](std::size_t e, std::size_t to) {
      for (const auto& c : children)
        if (c.second == to) return;
      children.emplace_back(e, to);
    };
    while (!todo.empty()) {
      Formula g = todo.back();
      todo.pop_back();
      using K = Formula::Kind;
      if (g.is(K::And)) {
        todo.push_back(g.lhs());
        todo.push_back(g.rhs());
      } else if (g.is(K::Or)) {
        todo.push_back(ev.holds(v, g.lhs()) ? g.lhs() : g.rhs());
      } else if (g.is(K::Box)) {
        boxes.push_back(g);
      } else if (g.is(K::Diamond)) {
        auto es = ev.events_of(g.action());
        for (const auto& [e, to] : ev.successors(v)) {
          if (!es.test(e) || !ev.holds(to, g.body())) continue;
          keep(e, to);
          obligations[to].insert(g.body());
          break;
        }
      }
    }
    for (const auto& b : boxes) {
      auto es = ev.events_of(b.action());
      for (const auto& [e, to] : children)
        if (es.test(e)) obligations[to].insert(b.body());
    }
    for (const auto& [e, to] : children) {
      kept_edges.insert({v, e, to});
      queue.push_back(to);
    }
  }

  std::map<std::size_t, std::size_t> renumber;
  VStructure out;
  out.events = m.events;
  out.interp_actions = m.interp_actions;
  for (std::size_t v : kept_worlds) {
    renumber[v] = out.worlds.size();
    out.worlds.push_back(m.worlds[v]);
  }
  for (const auto& t : kept_edges) out.transitions.insert({renumber[t.from], t.event, renumber[t.to]});
  for (const auto& [v, e] : m.permitted)
    if (renumber.count(v)) out.permitted.insert({renumber[v], e});
  for (const auto& [p, ws] : m.interp_props) {
    auto& dst = out.interp_props[p];
    for (std::size_t v : ws)
      if (renumber.count(v)) dst.insert(renumber[v]);
  }
  return out;
}

// Tree of all paths of length <= depth from w. World 0 of the result is w;
// every world copies its original's propositions and permissions.
inline VStructure unravel(const VStructure& m, std::size_t w, std::size_t depth) {
  if (w >= m.worlds.size()) throw PreconditionError("unknown world");
  Evaluator ev(m);
  VStructure out;
  out.events = m.events;
  out.interp_actions = m.interp_actions;
  std::map<std::size_t, std::vector<std::size_t>> copies_of;  // original -> copies
  std::deque<std::pair<std::size_t, std::size_t>> queue;       // (copy, distance)
  std::vector<std::size_t> origin;
  auto make = [&](std::size_t original) {
    std::size_t id = out.worlds.size();
    out.worlds.push_back(m.worlds[original] + "#" + std::to_string(id));
    origin.push_back(original);
    copies_of[original].push_back(id);
    return id;
  };
  queue.emplace_back(make(w), 0);
  while (!queue.empty()) {
    auto [copy, dist] = queue.front();
    queue.pop_front();
    if (dist == depth) continue;
    for (const auto& [e, to] : ev.successors(origin[copy])) {
      std::size_t child = make(to);
      out.transitions.insert({copy, e, child});
      queue.emplace_back(child, dist + 1);
    }
  }
  for (const auto& [v, e] : m.permitted)
    for (std::size_t c : copies_of[v]) out.permitted.insert({c, e});
  for (const auto& [p, ws] : m.interp_props) {
    auto& dst = out.interp_props[p];
    for (std::size_t v : ws)
      for (std::size_t c : copies_of[v]) dst.insert(c);
  }
  return out;
}

}  // namespace dpl

#endif  // DPL_SEMANTICS_SHRINK_HPP_
