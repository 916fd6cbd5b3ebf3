#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "markov_fuzzy/boolean_function.hpp"

namespace markov_fuzzy {

struct FormulaNode;

enum class BinaryOp { And, Or, Implies };
enum class Quantifier { Exists, Forall };

/// Immutable logic formula over named atoms. Copies share structure.
class Formula {
public:
  static Formula atom(std::string name);
  /// Belief family applied to a point, written `P(x)`.
  static Formula apply(std::string family, std::string argument);
  static Formula negate(Formula operand);
  static Formula binary(BinaryOp op, Formula lhs, Formula rhs);
  static Formula conj(Formula lhs, Formula rhs) { return binary(BinaryOp::And, std::move(lhs), std::move(rhs)); }
  static Formula disj(Formula lhs, Formula rhs) { return binary(BinaryOp::Or, std::move(lhs), std::move(rhs)); }
  static Formula implies(Formula lhs, Formula rhs) {
    return binary(BinaryOp::Implies, std::move(lhs), std::move(rhs));
  }
  static Formula quantified(Quantifier q, std::string variable, std::string universe, Formula body);

  const FormulaNode& node() const noexcept { return *node_; }

  friend bool operator==(const Formula& a, const Formula& b);

private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const FormulaNode> node_;
};

struct Var {
  std::string name;
  std::optional<std::string> argument;

  /// "P" for a plain atom, "P(x)" for an application.
  std::string key() const { return argument ? name + "(" + *argument + ")" : name; }
  friend bool operator==(const Var&, const Var&) = default;
};

struct Not {
  Formula operand;
  friend bool operator==(const Not&, const Not&) = default;
};

struct Binary {
  BinaryOp op;
  Formula lhs;
  Formula rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};

struct Quantified {
  Quantifier quantifier;
  std::string variable;
  std::string universe;
  Formula body;
  friend bool operator==(const Quantified&, const Quantified&) = default;
};

struct FormulaNode : std::variant<Var, Not, Binary, Quantified> {
  using variant::variant;
};

/// Canonical text with the fewest parentheses the grammar allows; parsing the
/// result gives back the same tree.
std::string to_string(const Formula& f);

bool is_quantifier_free(const Formula& f);

/// Atom keys of a quantifier-free formula in order of first appearance.
std::vector<std::string> atoms(const Formula& f);

/// Direct recursive truth evaluation.
bool evaluate(const Formula& f, const std::map<std::string, bool>& assignment);

/// Truth table of a quantifier-free formula; ordering[i] names input bit i.
BooleanFunction compile(const Formula& f, std::span<const std::string> ordering);

/// Sum-of-minterms normal form of a single-output function: the OR of one
/// full conjunction of literals per true row. The empty OR (constant false)
/// is written `v & !v` with v = ordering[0].
Formula minterm_formula(const BooleanFunction& f, std::span<const std::string> ordering);

}  // namespace markov_fuzzy
