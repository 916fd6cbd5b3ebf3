#include <gtest/gtest.h>

#include <random>

#include "markov_fuzzy/dsl.hpp"
#include "markov_fuzzy/error.hpp"
#include "random_formula.hpp"

using namespace markov_fuzzy;

namespace {

Formula v(const char* name) { return Formula::atom(name); }

ParseError parse_error(std::string_view text) {
  try {
    parse_formula(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed: " << text;
  return ParseError("", {}, {});
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ParseFormula, Examples) {
  EXPECT_EQ(parse_formula("!(P1 | P2)"), Formula::negate(Formula::disj(v("P1"), v("P2"))));
  EXPECT_EQ(parse_formula("P -> Q -> R"), Formula::implies(v("P"), Formula::implies(v("Q"), v("R"))));
  EXPECT_EQ(parse_formula("exists x in U : P(x)"),
            Formula::quantified(Quantifier::Exists, "x", "U", Formula::apply("P", "x")));
}

TEST(ParseFormula, Precedence) {
  EXPECT_EQ(parse_formula("!A & B | C -> D"),
            Formula::implies(Formula::disj(Formula::conj(Formula::negate(v("A")), v("B")), v("C")),
                             v("D")));
  EXPECT_EQ(parse_formula("A & B & C"), Formula::conj(Formula::conj(v("A"), v("B")), v("C")));
  EXPECT_EQ(parse_formula("A | B | C"), Formula::disj(Formula::disj(v("A"), v("B")), v("C")));
  EXPECT_EQ(parse_formula("  ( A )  "), v("A"));
  EXPECT_EQ(parse_formula("forall y in V : exists x in U : R(x) -> S(y)"),
            Formula::quantified(Quantifier::Forall, "y", "V",
                                Formula::quantified(Quantifier::Exists, "x", "U",
                                                    Formula::implies(Formula::apply("R", "x"),
                                                                     Formula::apply("S", "y")))));
}

TEST(ParseFormula, ErrorSpans) {
  auto e = parse_error("P1 & & P2");
  EXPECT_EQ(e.span().start, 5u);
  EXPECT_EQ(e.span().end, 6u);
  EXPECT_NE(std::find(e.expected().begin(), e.expected().end(), "identifier"), e.expected().end());

  e = parse_error("(A | B");
  EXPECT_EQ(e.span().start, 6u);
  EXPECT_EQ(e.span().end, 6u);
  EXPECT_NE(std::find(e.expected().begin(), e.expected().end(), "')'"), e.expected().end());

  e = parse_error("A $ B");
  EXPECT_EQ(e.span().start, 2u);
  EXPECT_EQ(e.span().end, 3u);

  e = parse_error("A B");
  EXPECT_EQ(e.span().start, 2u);

  e = parse_error("exists in U : P(x)");
  EXPECT_EQ(e.span().start, 7u);

  e = parse_error("");
  EXPECT_EQ(e.span().start, 0u);

  e = parse_error("A - B");
  EXPECT_EQ(e.span().start, 2u);
}

TEST(ParseFormula, ErrorSpansStayInsideInput) {
  std::mt19937_64 rng(5);
  const std::string alphabet = "PQ()!&|-> :x";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const std::size_t len = rng() % 12;
    for (std::size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      EXPECT_LE(e.span().start, e.span().end);
      EXPECT_LE(e.span().end, text.size()) << text;
      EXPECT_FALSE(e.expected().empty());
    }
  }
}

TEST(ParseFormula, ReservedWords) {
  EXPECT_THROW(parse_formula("in & A"), ParseError);
  EXPECT_THROW(parse_formula("A & exists"), ParseError);
  EXPECT_NO_THROW(parse_formula("inside & existsX"));
}

TEST(ParseFormula, PrinterRoundTrip) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto names = testgen::variable_names(1 + rng() % 4);
    const Formula f = testgen::random_formula(rng, names, 6);
    const std::string text = to_string(f);
    EXPECT_EQ(parse_formula(text), f) << text;
    EXPECT_EQ(to_string(parse_formula(text)), text);
  }
}

TEST(CheckBindings, Rules) {
  EXPECT_NO_THROW(check_bindings(parse_formula("exists x in U : P(x) & Q")));
  EXPECT_NO_THROW(check_bindings(parse_formula("forall y in V : exists x in U : P(x) | R(y)")));
  EXPECT_EQ(code_of([] { check_bindings(parse_formula("exists x in U : exists x in V : P(x)")); }),
            ErrorCode::InvalidQuantifier);
  EXPECT_EQ(code_of([] { check_bindings(parse_formula("exists x in U : P(x) & Q(x)")); }),
            ErrorCode::InvalidQuantifier);
  EXPECT_EQ(code_of([] { check_bindings(parse_formula("exists x in U : x")); }),
            ErrorCode::InvalidQuantifier);
  // Sibling scopes may reuse a name.
  EXPECT_NO_THROW(check_bindings(parse_formula("(exists x in U : P(x)) & (forall x in U : Q(x))")));
}

TEST(ParseModel, Examples) {
  auto m = parse_model(R"({"marginals":[0.7,0.6]})");
  ASSERT_TRUE(std::holds_alternative<PartialJointSpec>(m));
  EXPECT_EQ(std::get<PartialJointSpec>(m).arity(), 2u);

  EXPECT_EQ(code_of([] { parse_model(R"({"marginals":[0.7,0.6],"pairwise":{"1,2":0.9}})"); }),
            ErrorCode::InfeasibleQ);

  m = parse_model(R"({"universe":["a","b"],"p":{"a":0.3,"b":0.4}})");
  ASSERT_TRUE(std::holds_alternative<BeliefTable>(m));
  EXPECT_NEAR(std::get<BeliefTable>(m).belief(1), 0.4, 1e-15);

  m = parse_model(R"({"arity":2,"probs":[0.1,0.2,0.3,0.4]})");
  ASSERT_TRUE(std::holds_alternative<JointBooleanDist>(m));
}

TEST(ParseModel, PairKeysAreOneBased) {
  auto spec = parse_spec(R"({"marginals":[0.7,0.6,0.5],"pairwise":{"3,1":0.2}})");
  ASSERT_EQ(spec.pairwise().size(), 1u);
  EXPECT_EQ(spec.pairwise().begin()->first, (PartialJointSpec::Pair{0, 2}));
  auto table = parse_table(R"({"universe":["a","b"],"p":{"a":0.7,"b":0.6},"q_pair":{"b, a":0.1}})");
  EXPECT_NEAR(*table.q(0, 1), 0.1, 1e-15);
}

TEST(ParseModel, SchemaErrors) {
  const char* bad[] = {
      "not json",
      "[1,2]",
      R"({"something":1})",
      R"({"marginals":[]})",
      R"({"marginals":[1.5]})",
      R"({"marginals":["a"]})",
      R"({"marginals":[0.5],"extra":1})",
      R"({"marginals":[0.5,0.5],"pairwise":{"1":0.2}})",
      R"({"marginals":[0.5,0.5],"pairwise":{"1,3":0.2}})",
      R"({"marginals":[0.5,0.5],"pairwise":{"1,1":0.2}})",
      R"({"marginals":[0.5,0.5],"pairwise":{"1,2":0.2},"independent":true})",
      R"({"universe":["a"],"p":{}})",
      R"({"universe":["a"],"p":{"a":0.1,"b":0.2}})",
      R"({"universe":["a","a"],"p":{"a":0.1}})",
      R"({"universe":["a","b"],"p":{"a":0.1,"b":0.2},"q_pair":{"a,c":0.1}})",
      R"({"arity":2,"probs":[0.5,0.5]})",
      R"({"arity":-1,"probs":[]})",
  };
  for (const char* text : bad) {
    EXPECT_EQ(code_of([&] { parse_model(text); }), ErrorCode::SchemaError) << text;
  }
  EXPECT_EQ(code_of([] { parse_model(R"({"arity":1,"probs":[0.5,0.6]})"); }), ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([] { parse_model(R"({"arity":1,"probs":[-0.5,1.5]})"); }), ErrorCode::NegativeMass);
  EXPECT_EQ(code_of([] { parse_model(R"({"arity":30,"probs":[]})"); }), ErrorCode::ArityTooLarge);
  EXPECT_EQ(code_of([] { parse_spec(R"({"universe":[],"p":{}})"); }), ErrorCode::SchemaError);
}
