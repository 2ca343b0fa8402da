#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "dpl/dpl.hpp"
#include "support/generators.hpp"

namespace dpl {
namespace {

Formula P(const char* s) { return parse_formula(s); }
ActionTerm act(const char* s) { return ActionTerm::prim(s); }

TEST(Parse, ImplicationOfPropositions) {
  Vocabulary v({"a"}, {"p"}, false);
  EXPECT_EQ(parse_formula("p -> p", v), Formula::implies(Formula::prop("p"), Formula::prop("p")));
}

TEST(Parse, DistributionAxiomShape) {
  Formula f = P("([a]p && <a>q) -> <a>(p && q)");
  Formula p = Formula::prop("p"), q = Formula::prop("q");
  Formula expected = Formula::implies(Formula::conj(Formula::box(act("a"), p), Formula::diamond(act("a"), q)),
                                      Formula::diamond(act("a"), Formula::conj(p, q)));
  EXPECT_EQ(f, expected);
}

TEST(Parse, RejectsEquationUnderModality) {
  EXPECT_THROW(P("[a](a = b)"), ParseError);
  EXPECT_THROW(P("<a>(p || a != 0)"), ParseError);
  EXPECT_NO_THROW(P("[a]p && a = b"));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(P("p -> q -> r"), Formula::implies(Formula::prop("p"), Formula::implies(Formula::prop("q"), Formula::prop("r"))));
  EXPECT_EQ(P("p || q && r"), Formula::disj(Formula::prop("p"), Formula::conj(Formula::prop("q"), Formula::prop("r"))));
  EXPECT_EQ(P("~p && q"), Formula::conj(Formula::negation(Formula::prop("p")), Formula::prop("q")));
  EXPECT_EQ(P("p <-> q -> r"), Formula::iff(Formula::prop("p"), Formula::implies(Formula::prop("q"), Formula::prop("r"))));
  EXPECT_EQ(parse_action("a + b & !c"), ActionTerm::join(act("a"), ActionTerm::meet(act("b"), ActionTerm::compl_of(act("c")))));
  EXPECT_EQ(P("[a]p && q"), Formula::conj(Formula::box(act("a"), Formula::prop("p")), Formula::prop("q")));
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    P("p && (q ||");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
  }
  try {
    parse_formula("[a]p && [c]q", Vocabulary({"a", "b"}));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 9u);
  }
}

TEST(Parse, DeclaredVocabularyChecks) {
  Vocabulary v({"a", "b"}, {"p"}, false);
  EXPECT_THROW(parse_formula("a", v), ParseError);          // action used as formula
  EXPECT_THROW(parse_formula("[a]q", v), ParseError);       // undeclared proposition
  EXPECT_THROW(parse_formula("P(c)", v), ParseError);       // undeclared action
  EXPECT_THROW(parse_formula("c = a", v), ParseError);
  EXPECT_NO_THROW(parse_formula("[a + b]p <-> [U]p", v));
}

TEST(Parse, InferenceModeRoles) {
  EXPECT_THROW(P("[a]a"), ParseError);
  EXPECT_THROW(P("p && [p]q"), ParseError);
  EXPECT_EQ(primitive_actions(P("[a]p && P(b)")), (std::set<std::string>{"a", "b"}));
}

TEST(Parse, ReservedNames) {
  EXPECT_THROW(P("[_b1]p"), ParseError);
  EXPECT_THROW(P("_x"), ParseError);
  Vocabulary v({"a", "_b1"});
  EXPECT_NO_THROW(parse_formula("[a & _b1]p", v));
}

TEST(Parse, GarbageNeverCrashes) {
  for (const char* s : {"", "(", ")", "[a", "<a>", "P(", "p ->", "&&", "a =", "= b", "~", "[0]", "p q", "Pw(a", "1"})
    EXPECT_THROW(P(s), ParseError) << s;
}

TEST(Print, Examples) {
  EXPECT_EQ(pretty_print(Formula::prop("p")), "p");
  EXPECT_EQ(pretty_print(Formula::box(ActionTerm::join(act("a"), act("b")), Formula::prop("p"))), "[a + b]p");
  EXPECT_EQ(pretty_print(Formula::not_equal(act("a"), ActionTerm::empty())), "a != 0");
  EXPECT_EQ(to_string(ActionTerm::meet(act("a"), ActionTerm::compl_of(act("b")))), "a & !b");
}

TEST(Print, RoundTripRandom) {
  testing::Rng rng(11);
  testing::FormulaShape shape;
  shape.actions = {"a", "b", "c"};
  shape.max_size = 20;
  shape.max_degree = 3;
  shape.term_depth = 3;
  for (int i = 0; i < 1000; ++i) {
    Formula f = testing::random_formula(rng, shape);
    std::string text = pretty_print(f);
    ASSERT_EQ(parse_formula(text), f) << text;
    ASSERT_EQ(parse_formula(text, Vocabulary(shape.actions)), f) << text;
  }
}

TEST(Nnf, Examples) {
  EXPECT_EQ(nnf(P("~(<a>p -> [a]p)")), P("<a>p && <a>~p"));
  EXPECT_EQ(nnf(P("~P(a)")), P("~P(a)"));
  EXPECT_EQ(nnf(P("~(a = b)")), P("a != b"));
  EXPECT_EQ(nnf(P("~~p")), P("p"));
  EXPECT_EQ(nnf(P("~[a]~Pw(b)")), P("<a>Pw(b)"));
  EXPECT_EQ(nnf(P("~true")), P("false"));
}

TEST(Nnf, OutputIsNnfAndPreservesMeasures) {
  testing::Rng rng(12);
  testing::FormulaShape shape;
  shape.max_size = 16;
  shape.max_degree = 3;
  for (int i = 0; i < 500; ++i) {
    Formula f = testing::random_formula(rng, shape);
    Formula g = nnf(f);
    ASSERT_TRUE(is_nnf(g)) << pretty_print(g);
    EXPECT_EQ(degree(g), degree(f));
    EXPECT_EQ(primitive_actions(g), primitive_actions(f));
    EXPECT_EQ(nnf(g), g);
  }
}

TEST(Nnf, SemanticallyEquivalent) {
  testing::Rng rng(13);
  testing::FormulaShape shape;
  Vocabulary v({"a", "b"});
  for (int i = 0; i < 300; ++i) {
    VStructure m = testing::random_tree_model(rng, v, shape.props, 2, 1 + testing::pick(rng, 2));
    for (int j = 0; j < 5; ++j) {
      Formula f = testing::random_formula(rng, shape);
      Formula g = nnf(f);
      for (std::size_t w = 0; w < m.worlds.size(); ++w) ASSERT_EQ(satisfies(m, w, f), satisfies(m, w, g)) << pretty_print(f);
    }
  }
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(P("P(a)")), 0u);
  EXPECT_EQ(degree(P("<a>p -> [a]p")), 1u);
  EXPECT_EQ(degree(P("[a]<b>Pw(c)")), 2u);
}

TEST(PrimitiveActions, Examples) {
  EXPECT_TRUE(primitive_actions(P("p && q")).empty());
  EXPECT_EQ(primitive_actions(P("[a + b]p <-> [U]p")), (std::set<std::string>{"a", "b"}));
  EXPECT_EQ(primitive_actions(P("P(a & !c) && b = 0")), (std::set<std::string>{"a", "b", "c"}));
}

TEST(SubformulaeAtLevel, Examples) {
  auto items = [](const FormulaSet& s) { return s.items; };
  EXPECT_EQ(items(subformulae_at_level(P("p && ~q"), 0)), (std::vector<Formula>{P("p"), P("~q")}));
  Formula f = P("p && <a>(q && Pw(b))");
  EXPECT_EQ(items(subformulae_at_level(f, 0)), (std::vector<Formula>{P("p"), P("<a>(q && Pw(b))")}));
  EXPECT_EQ(items(subformulae_at_level(f, 1)), (std::vector<Formula>{P("q"), P("Pw(b)")}));
  // Members under a negated diamond are negated and simplified.
  EXPECT_EQ(items(subformulae_at_level(P("~<a>(~p && <b>q)"), 1)), (std::vector<Formula>{P("p"), P("[b]~q")}));
}

TEST(SubformulaeAtLevel, RejectsNonNormalForm) {
  EXPECT_THROW(subformulae_at_level(P("p || q"), 0), PreconditionError);
  EXPECT_THROW(subformulae_at_level(P("[a]p"), 0), PreconditionError);
}

TEST(ExistentialDegree, Examples) {
  EXPECT_EQ(existential_degree(P("p -> q")), 0u);
  EXPECT_EQ(existential_degree(P("<a>p && <a>~p")), 2u);
  EXPECT_EQ(existential_degree(P("[a](<b>p && Pw(c))")), 2u);
  EXPECT_EQ(existential_degree(P("Pw(a) && ~P(b)")), 2u);
  // Tree count, not the DNF count.
  EXPECT_EQ(existential_degree(P("<a>p || <a>q")), 2u);
  EXPECT_EQ(existential_degree(P("~(<a>p -> [a]p)")), 2u);
}

TEST(ExistentialDegree, BoundsSubformulaCountsOnNormalForms) {
  testing::Rng rng(14);
  std::vector<std::string> actions{"a", "b"}, props{"p", "q"};
  Vocabulary v(actions);
  for (int i = 0; i < 300; ++i) {
    VStructure m = testing::random_tree_model(rng, v, props, 2, 2);
    Formula f = testing::random_true_nf(rng, m, 0, actions, props, 2, 3);
    ASSERT_TRUE(is_normal_form(f));
    std::size_t best = 0;
    for (std::size_t k = 0; k <= degree(f); ++k) {
      std::size_t c = count_existential(subformulae_at_level(f, k));
      EXPECT_LE(c, existential_degree(f)) << pretty_print(f);
      best = std::max(best, c);
    }
    EXPECT_LE(best, existential_degree(f));
  }
  // Without repeated members the two counts meet at the maximizing level.
  for (const char* s : {"<a>p && <b>q && Pw(a)", "p && <a>(<a>p && <b>~q && ~P(b))", "~<a>~<b>p && <a>Pw(b)"}) {
    Formula f = P(s);
    std::size_t best = 0;
    for (std::size_t k = 0; k <= degree(f); ++k) best = std::max(best, count_existential(subformulae_at_level(f, k)));
    EXPECT_EQ(best, existential_degree(f)) << s;
  }
}

TEST(ExistentialDegree, LevelZeroCountsAddUnderConjunction) {
  testing::Rng rng(15);
  testing::FormulaShape shape;
  for (int i = 0; i < 300; ++i) {
    Formula f = testing::random_formula(rng, shape), g = testing::random_formula(rng, shape);
    auto pf = existential_profile(f), pg = existential_profile(g), pfg = existential_profile(Formula::conj(f, g));
    EXPECT_EQ(pfg[0], pf[0] + pg[0]);
  }
}

TEST(Vocabulary, CanonicalOrder) {
  Vocabulary v({"b", "_b2", "a", "_b10", "_b1"});
  EXPECT_EQ(v.actions(), (std::vector<std::string>{"a", "b", "_b1", "_b2", "_b10"}));
  EXPECT_EQ(*v.index_of("_b1"), 2u);
}

TEST(Vocabulary, Limits) {
  EXPECT_THROW(Vocabulary({}), VocabularyError);
  EXPECT_THROW(Vocabulary({"a", "a"}), VocabularyError);
  EXPECT_THROW(Vocabulary({"a"}, {"a"}), VocabularyError);
  std::vector<std::string> many;
  for (int i = 0; i < 25; ++i) many.push_back("x" + std::to_string(i));
  EXPECT_THROW(Vocabulary{many}, ResourceError);
  many.pop_back();
  EXPECT_NO_THROW(Vocabulary{many});
}

}  // namespace
}  // namespace dpl
