#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dpl/dpl.hpp"
#include "support/algebra_oracle.hpp"
#include "support/generators.hpp"

namespace dpl {
namespace {

Formula P(const char* s) { return parse_formula(s); }
ActionTerm T(const char* s) { return parse_action(s); }

const Vocabulary kAB({"a", "b"});

// Root w with an a&b edge to w1 (p) and an a&!b edge to w2 (not p).
VStructure two_witnesses() {
  VStructure m;
  m.worlds = {"w", "w1", "w2"};
  m.events = {"a & b", "a & !b"};
  m.interp_actions = {{"a", {0, 1}}, {"b", {0}}};
  m.interp_props = {{"p", {1}}};
  m.transitions = {{0, 0, 1}, {0, 1, 2}};
  return m;
}

VStructure one_world(std::map<std::string, std::set<std::size_t>> actions, std::size_t events) {
  VStructure m;
  m.worlds = {"w"};
  for (std::size_t e = 0; e < events; ++e) m.events.push_back("e" + std::to_string(e));
  m.interp_actions = std::move(actions);
  return m;
}

TEST(Validate, Examples) {
  EXPECT_TRUE(validate_structure(two_witnesses()).ok());
  EXPECT_TRUE(validate_structure(one_world({{"a", {0}}}, 1)).ok());
  auto r = validate_structure(one_world({{"a", {0, 1}}}, 2));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].condition, "I.1");
}

TEST(Validate, EachCondition) {
  EXPECT_EQ(validate_structure(one_world({{"a", {0}}}, 0)).violations.back().condition, "index");
  VStructure empty = one_world({}, 0);
  EXPECT_EQ(validate_structure(empty).violations.at(0).condition, "nonempty");
  EXPECT_EQ(validate_structure(one_world({{"a", {0, 1}}, {"b", {0, 1}}}, 2)).violations.at(0).condition, "I.2");
  EXPECT_EQ(validate_structure(one_world({{"a", {0}}}, 2)).violations.at(0).condition, "I.3");
  VStructure m = two_witnesses();
  m.transitions.insert({0, 0, 2});
  EXPECT_EQ(validate_structure(m).violations.at(0).condition, "functionality");
}

// All interpretations of two actions over up to four events.
TEST(Validate, AtomSingleEventLawExhaustive) {
  const std::vector<std::string> names{"a", "b"};
  std::size_t valid = 0;
  for (std::size_t ne = 1; ne <= 4; ++ne) {
    std::uint32_t total = 1U << (2 * ne);
    for (std::uint32_t code = 0; code < total; ++code) {
      std::vector<std::uint32_t> masks;
      VStructure m = one_world({{"a", {}}, {"b", {}}}, ne);
      for (std::size_t e = 0; e < ne; ++e) {
        std::uint32_t mask = (code >> (2 * e)) & 3U;
        masks.push_back(mask);
        for (std::size_t i = 0; i < 2; ++i)
          if ((mask >> i) & 1U) m.interp_actions[names[i]].insert(e);
      }
      bool ok = validate_structure(m).ok();
      EXPECT_EQ(ok, testing::detail::conforms(masks, 2, testing::I2Reading::AtomCell));
      if (!ok) continue;
      ++valid;
      for (std::uint32_t a = 1; a <= 3; ++a) {
        ActionTerm t = atom_term(AtomId{a}, kAB);
        EXPECT_LE(interpret_term(m, t).size(), 1u);
        // A non-empty atom cannot be weakly permitted without being strongly permitted.
        for (std::size_t e = 0; e < ne; ++e) {
          VStructure pm = m;
          pm.permitted.insert({0, e});
          if (interpret_term(pm, t).empty()) continue;
          EXPECT_EQ(satisfies(pm, 0, Formula::perm_weak(t)), satisfies(pm, 0, Formula::perm_strong(t)));
        }
      }
    }
  }
  EXPECT_GT(valid, 10u);
}

TEST(InterpretTerm, Examples) {
  VStructure m = two_witnesses();
  EXPECT_EQ(interpret_term(m, T("U")), (EventSet{0, 1}));
  EXPECT_TRUE(interpret_term(m, T("a & !a")).empty());
  EXPECT_EQ(interpret_term(m, T("a")), (EventSet{0, 1}));
  EXPECT_EQ(interpret_term(m, T("!b")), (EventSet{1}));
  EXPECT_THROW(interpret_term(m, T("c")), VocabularyError);
}

TEST(Satisfies, Examples) {
  VStructure m = two_witnesses();
  EXPECT_TRUE(satisfies(m, 0, P("[0]false")));
  EXPECT_TRUE(satisfies(m, 0, P("<a>p")));
  EXPECT_FALSE(satisfies(m, 0, P("[a]p")));
  EXPECT_TRUE(satisfies(m, 0, P("<a>p && <a>~p")));
  VStructure none = one_world({{"a", {}}, {"b", {0}}}, 1);
  EXPECT_TRUE(satisfies(none, 0, P("P(a)")));
  EXPECT_FALSE(satisfies(none, 0, P("Pw(a)")));
}

TEST(Satisfies, Permissions) {
  VStructure m = two_witnesses();
  m.permitted = {{0, 0}};
  EXPECT_TRUE(satisfies(m, 0, P("Pw(a)")));
  EXPECT_FALSE(satisfies(m, 0, P("P(a)")));
  EXPECT_TRUE(satisfies(m, 0, P("P(b)")));
  EXPECT_FALSE(satisfies(m, 1, P("Pw(U)")));
}

TEST(Satisfies, EquationsAreRigid) {
  testing::Rng rng(41);
  std::vector<std::string> acts{"a", "b"};
  for (int i = 0; i < 200; ++i) {
    VStructure m = testing::random_tree_model(rng, kAB, {"p"}, 2, 2);
    Formula eq = Formula::equal(testing::random_term(rng, acts, 2), testing::random_term(rng, acts, 2));
    for (std::size_t w = 1; w < m.worlds.size(); ++w) EXPECT_EQ(satisfies(m, w, eq), satisfies(m, 0, eq));
  }
}

TEST(Extract, TwoWitnessCountermodel) {
  Vocabulary v({"a", "_b1"});
  auto r = prove_tableau(nnf(P("~(<a>p -> [a]p)")), v);
  ASSERT_FALSE(r.closed);
  VStructure m = extract_countermodel(*r.open_branch);
  EXPECT_TRUE(validate_structure(m).ok());
  EXPECT_EQ(m.worlds.size(), 3u);
  ASSERT_EQ(m.transitions.size(), 2u);
  EXPECT_FALSE(satisfies(m, 0, P("<a>p -> [a]p")));
  std::vector<std::string> edges;
  for (const auto& t : m.transitions) edges.push_back(m.events[t.event]);
  std::sort(edges.begin(), edges.end());
  EXPECT_EQ(edges, (std::vector<std::string>{"a & !_b1", "a & _b1"}));
  EXPECT_EQ(m.worlds[0], "<>");
}

TEST(Extract, PropositionOnly) {
  Vocabulary v({"a"});
  auto r = prove_tableau(P("p"), v);
  VStructure m = extract_countermodel(*r.open_branch);
  EXPECT_EQ(m.worlds.size(), 1u);
  EXPECT_TRUE(m.transitions.empty());
  EXPECT_EQ(m.events, (std::vector<std::string>{"a"}));
  EXPECT_EQ(m.interp_props["p"], (std::set<std::size_t>{0}));
}

TEST(Extract, PermittedAtom) {
  Vocabulary v({"a"});
  auto r = prove_tableau(P("Pw(a) && P(a)"), v);
  ASSERT_FALSE(r.closed);
  VStructure m = extract_countermodel(*r.open_branch);
  EXPECT_TRUE(m.permitted.count({0, 0}));
  EXPECT_TRUE(satisfies(m, 0, P("Pw(a) && P(a)")));
}

TEST(Extract, RejectsClosedOrUnsaturated) {
  Vocabulary v({"a"});
  Branch closed(v, P("false"));
  EXPECT_THROW(extract_countermodel(closed), PreconditionError);
  Branch raw(v, P("p && q"));
  EXPECT_THROW(extract_countermodel(raw), PreconditionError);
}

TEST(Extract, RandomOpenBranchesSatisfyRoot) {
  testing::Rng rng(42);
  testing::FormulaShape shape;
  shape.actions = {"a", "b", "c"};
  shape.max_size = 14;
  Vocabulary v(shape.actions);
  std::size_t open = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = testing::random_formula(rng, shape);
    auto r = prove_tableau(nnf(f), v, {.record_trace = false});
    if (r.closed) continue;
    ++open;
    VStructure m = extract_countermodel(*r.open_branch);
    ASSERT_TRUE(validate_structure(m).ok()) << validate_structure(m).to_string();
    ASSERT_TRUE(satisfies(m, 0, f)) << pretty_print(f);
  }
  EXPECT_GT(open, 100u);
}

TEST(Oracle, Examples) {
  Vocabulary a({"a"});
  EXPECT_EQ(bounded_sat_oracle(P("<a>p && <a>~p"), a), OracleVerdict::Unsatisfiable);
  EXPECT_EQ(bounded_sat_oracle(P("<a>p && <a>~p"), kAB), OracleVerdict::Satisfiable);
  EXPECT_EQ(bounded_sat_oracle(P("p && ~p"), kAB), OracleVerdict::Unsatisfiable);
  // A diamond and a box on the same action clash in every vocabulary.
  EXPECT_EQ(bounded_sat_oracle(P("<a>p && [a]~p"), a), OracleVerdict::Unsatisfiable);
  EXPECT_EQ(bounded_sat_oracle(P("<a>p && [a]~p"), kAB), OracleVerdict::Unsatisfiable);
  EXPECT_EQ(bounded_sat_oracle(P("P(a) && ~Pw(a)"), a), OracleVerdict::Unsatisfiable);
  EXPECT_EQ(bounded_sat_oracle(P("P(a) && ~Pw(a)"), kAB), OracleVerdict::Satisfiable);
}

TEST(Oracle, ModelsAreGenuine) {
  auto m = bounded_sat_model(P("<a>(p && Pw(b)) && <a & !b>~p && a != b"), kAB);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(validate_structure(*m).ok());
  EXPECT_TRUE(satisfies(*m, 0, P("<a>(p && Pw(b)) && <a & !b>~p && a != b")));
}

TEST(Oracle, Guards) {
  EXPECT_THROW(bounded_sat_oracle(P("p"), Vocabulary({"a", "b", "c", "d"})), ResourceError);
  EXPECT_THROW(bounded_sat_oracle(P("p && q && r && s"), kAB), ResourceError);
  EXPECT_THROW(bounded_sat_oracle(P("<a><a><a><a>p"), kAB), ResourceError);
  EXPECT_THROW(bounded_sat_oracle(P("<c>p"), kAB), VocabularyError);
}

TEST(Oracle, InvariantUnderNnf) {
  testing::Rng rng(43);
  testing::FormulaShape shape;
  for (int i = 0; i < 150; ++i) {
    Formula f = testing::random_formula(rng, shape);
    EXPECT_EQ(bounded_sat_oracle(f, kAB), bounded_sat_oracle(nnf(f), kAB)) << pretty_print(f);
  }
}

TEST(ReachLabeling, TwoWitnesses) {
  Formula f = P("<a>p && <a>~p");
  auto l = reach_labeling(two_witnesses(), 0, f);
  EXPECT_EQ(l.labels[0].items, (std::vector<Formula>{P("<a>p"), P("<a>~p")}));
  EXPECT_EQ(l.labels[1].items, (std::vector<Formula>{P("p")}));
  EXPECT_EQ(l.labels[2].items, (std::vector<Formula>{P("~p")}));
  EXPECT_EQ(l.levels[2], 1u);
}

TEST(ReachLabeling, LeavesHoldOnlyLiterals) {
  testing::Rng rng(44);
  std::vector<std::string> acts{"a", "b"}, props{"p", "q"};
  for (int i = 0; i < 100; ++i) {
    VStructure m = testing::random_tree_model(rng, kAB, props, 2, 2);
    Formula f = testing::random_true_nf(rng, m, 0, acts, props, 2, 3);
    auto l = reach_labeling(m, 0, f);
    for (const auto& g : l.labels[0].items) EXPECT_TRUE(satisfies(m, 0, g));
    for (const auto& [v, k] : l.levels) {
      if (k != degree(f)) continue;
      for (const auto& g : l.labels[v].items) EXPECT_EQ(degree(g), 0u) << pretty_print(g);
    }
  }
}

TEST(ReachLabeling, Preconditions) {
  VStructure m = two_witnesses();
  EXPECT_THROW(reach_labeling(m, 0, P("p || q")), PreconditionError);
  m.transitions.insert({1, 1, 2});
  EXPECT_THROW(reach_labeling(m, 0, P("p")), PreconditionError);
}

TEST(Shrink, KeepsOneWitnessPerDiamond) {
  VStructure m;
  m.worlds = {"w", "x", "y", "z"};
  m.events = {"a & !b", "a & b", "b & !a"};
  m.interp_actions = {{"a", {0, 1}}, {"b", {1, 2}}};
  m.interp_props = {{"p", {1, 2, 3}}};
  m.transitions = {{0, 0, 1}, {0, 1, 2}, {0, 2, 3}};
  VStructure s = shrink_model(m, 0, P("<U>p"));
  EXPECT_EQ(s.worlds.size(), 2u);
  EXPECT_EQ(s.transitions.size(), 1u);
  EXPECT_TRUE(satisfies(s, 0, P("<U>p")));
}

TEST(Shrink, NeededWitnessesStay) {
  VStructure m = two_witnesses();
  VStructure s = shrink_model(m, 0, P("<a>p && <a>~p"));
  EXPECT_EQ(s.worlds.size(), 3u);
  EXPECT_EQ(s.transitions.size(), 2u);
  EXPECT_EQ(validate_structure(s).ok(), true);
  EXPECT_TRUE(satisfies(s, 0, P("<a>p && <a>~p")));
}

TEST(Shrink, Preconditions) {
  VStructure m = two_witnesses();
  EXPECT_THROW(shrink_model(m, 0, P("[a]p")), PreconditionError);
  EXPECT_THROW(shrink_model(m, 0, P("<b>~p")), PreconditionError);
}

TEST(Shrink, PreservesTruthAndBoundsOutDegree) {
  testing::Rng rng(45);
  std::vector<std::string> acts{"a", "b"}, props{"p", "q"};
  for (int i = 0; i < 300; ++i) {
    VStructure m = testing::random_tree_model(rng, kAB, props, 2, 3);
    Formula f = testing::random_true_nf(rng, m, 0, acts, props, 2, 3);
    VStructure s = shrink_model(m, 0, f);
    ASSERT_TRUE(validate_structure(s).ok());
    ASSERT_TRUE(satisfies(s, 0, f)) << pretty_print(f);
    std::map<std::size_t, std::size_t> out;
    for (const auto& t : s.transitions) ++out[t.from];
    for (const auto& [w, n] : out) EXPECT_LE(n, existential_degree(f)) << pretty_print(f);
  }
}

TEST(Unravel, PreservesTruthUpToDepth) {
  testing::Rng rng(46);
  testing::FormulaShape shape;
  shape.deontic = true;
  shape.equations = false;
  for (int i = 0; i < 100; ++i) {
    VStructure m = two_witnesses();
    m.transitions = {{0, 0, 1}, {1, 1, 0}, {0, 1, 2}, {2, 0, 2}};
    m.permitted = {{0, 0}, {2, 1}};
    Formula f = testing::random_formula(rng, shape);
    VStructure u = unravel(m, 0, degree(f));
    ASSERT_TRUE(is_tree_shaped(u, 0));
    EXPECT_EQ(satisfies(u, 0, f), satisfies(m, 0, f)) << pretty_print(f);
  }
}

TEST(Io, JsonRoundTrip) {
  testing::Rng rng(47);
  for (int i = 0; i < 50; ++i) {
    VStructure m = testing::random_tree_model(rng, kAB, {"p", "q"}, 2, 2);
    EXPECT_EQ(structure_from_json(to_json(m)), m);
    EXPECT_EQ(structure_from_json(nlohmann::json::parse(to_json(m).dump())), m);
  }
  EXPECT_THROW(structure_from_json(nlohmann::json::parse(R"({"worlds": 3})")), ParseError);
  EXPECT_THROW(structure_from_json(nlohmann::json::parse(R"({"worlds": ["w", "w"], "events": ["e"]})")), ParseError);
}

TEST(Io, DotRoundTrip) {
  testing::Rng rng(48);
  for (int i = 0; i < 50; ++i) {
    VStructure m = testing::random_tree_model(rng, kAB, {"p", "q"}, 2, 2);
    EXPECT_EQ(structure_from_dot(to_dot(m)), m);
  }
  VStructure m = two_witnesses();
  std::string dot = to_dot(m);
  DotGraph g = parse_dot(dot);
  EXPECT_TRUE(g.directed);
  EXPECT_EQ(g.nodes.size(), 3u);
  EXPECT_EQ(g.edges.size(), 2u);
}

TEST(Io, DotReaderSyntax) {
  DotGraph g = parse_dot(R"(/* comment */ strict digraph "G" {
    // line comment
    rankdir = LR; node [shape=circle]
    a -> b -> c [label="x"];
    d;
    subgraphless = "yes"
  })");
  EXPECT_EQ(g.nodes.size(), 4u);
  EXPECT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[1].attrs.at("label"), "x");
  EXPECT_EQ(g.graph_attrs.at("rankdir"), "LR");
  for (const char* bad : {"", "digraph {", "digraph { a -> }", "graph { a -- b } x", "digraph { subgraph s { a } }"})
    EXPECT_THROW(parse_dot(bad), ParseError) << bad;
}

}  // namespace
}  // namespace dpl
