#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "markov_fuzzy/bounds.hpp"
#include "markov_fuzzy/formula.hpp"
#include "markov_fuzzy/joint.hpp"
#include "markov_fuzzy/quantifiers.hpp"

namespace markov_fuzzy {

// Formula syntax:
//
//   formula := quant | implies
//   quant   := ("exists" | "forall") IDENT "in" IDENT ":" formula
//   implies := or ("->" implies)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "!" unary | "(" formula ")" | IDENT | IDENT "(" IDENT ")"
//
// `&` and `|` associate to the left, `->` to the right. Whitespace is
// ignored. `exists`, `forall` and `in` are reserved.

/// Throws ParseError carrying the span of the first offending token and the
/// set of tokens that would have been accepted there.
Formula parse_formula(std::string_view text);

/// Scoping rules for quantified formulas: a quantifier may not rebind a
/// variable of an enclosing quantifier, a bound variable cannot stand alone
/// as a proposition, and each bound variable is applied to one belief family
/// only. Throws InvalidQuantifier.
void check_bindings(const Formula& f);

using Model = std::variant<PartialJointSpec, BeliefTable, JointBooleanDist>;

/// Reads one of the JSON model documents:
///
///   {"marginals": [p...], "pairwise": {"i,j": q}?, "independent": bool?}
///   {"universe": [label...], "p": {label: p}, "q_pair": {"l1,l2": q}?}
///   {"arity": n, "probs": [2^n entries]}
///
/// Pair indices in "pairwise" are 1-based. Structural problems raise
/// SchemaError; constraint violations keep their own codes (InfeasibleQ,
/// NegativeMass, NotNormalized).
Model parse_model(std::string_view text);

PartialJointSpec parse_spec(std::string_view text);
BeliefTable parse_table(std::string_view text);
JointBooleanDist parse_joint(std::string_view text);

}  // namespace markov_fuzzy
