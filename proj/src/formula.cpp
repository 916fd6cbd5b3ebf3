#include "markov_fuzzy/formula.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_map>

#include "markov_fuzzy/belief.hpp"
#include "markov_fuzzy/error.hpp"

namespace markov_fuzzy {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const FormulaNode>(Var{std::move(name), std::nullopt}));
}

Formula Formula::apply(std::string family, std::string argument) {
  return Formula(std::make_shared<const FormulaNode>(Var{std::move(family), std::move(argument)}));
}

Formula Formula::negate(Formula operand) {
  return Formula(std::make_shared<const FormulaNode>(Not{std::move(operand)}));
}

Formula Formula::binary(BinaryOp op, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const FormulaNode>(Binary{op, std::move(lhs), std::move(rhs)}));
}

Formula Formula::quantified(Quantifier q, std::string variable, std::string universe, Formula body) {
  return Formula(std::make_shared<const FormulaNode>(
      Quantified{q, std::move(variable), std::move(universe), std::move(body)}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const std::variant<Var, Not, Binary, Quantified>& lhs = *a.node_;
  const std::variant<Var, Not, Binary, Quantified>& rhs = *b.node_;
  return lhs == rhs;
}

namespace {

// Binding strength used by the printer: higher binds tighter.
enum Level { kQuant = 0, kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

int level_of(const Formula& f) {
  return std::visit(overloaded{
                        [](const Var&) { return int{kUnary}; },
                        [](const Not&) { return int{kUnary}; },
                        [](const Binary& b) {
                          switch (b.op) {
                            case BinaryOp::And: return int{kAnd};
                            case BinaryOp::Or: return int{kOr};
                            case BinaryOp::Implies: return int{kImplies};
                          }
                          return int{kUnary};
                        },
                        [](const Quantified&) { return int{kQuant}; },
                    },
                    f.node());
}

void print(const Formula& f, int min_level, std::string& out);

void print_child(const Formula& f, int min_level, std::string& out) {
  if (level_of(f) < min_level) {
    out += '(';
    print(f, kQuant, out);
    out += ')';
  } else {
    print(f, min_level, out);
  }
}

void print(const Formula& f, int /*min_level*/, std::string& out) {
  std::visit(overloaded{
                 [&](const Var& v) { out += v.key(); },
                 [&](const Not& n) {
                   out += '!';
                   print_child(n.operand, kUnary, out);
                 },
                 [&](const Binary& b) {
                   // & and | parse left-associatively, -> right-associatively.
                   switch (b.op) {
                     case BinaryOp::And:
                       print_child(b.lhs, kAnd, out);
                       out += " & ";
                       print_child(b.rhs, kUnary, out);
                       break;
                     case BinaryOp::Or:
                       print_child(b.lhs, kOr, out);
                       out += " | ";
                       print_child(b.rhs, kAnd, out);
                       break;
                     case BinaryOp::Implies:
                       print_child(b.lhs, kOr, out);
                       out += " -> ";
                       print_child(b.rhs, kImplies, out);
                       break;
                   }
                 },
                 [&](const Quantified& q) {
                   out += q.quantifier == Quantifier::Exists ? "exists " : "forall ";
                   out += q.variable;
                   out += " in ";
                   out += q.universe;
                   out += " : ";
                   print(q.body, kQuant, out);
                 },
             },
             f.node());
}

using Words = std::vector<std::uint64_t>;

struct BitCompiler {
  std::size_t arity;
  std::size_t words;
  std::uint64_t tail_mask;
  std::unordered_map<std::string, std::size_t> index;

  Words column(std::size_t var) const {
    static constexpr std::uint64_t kPatterns[6] = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
    };
    Words w(words);
    for (std::size_t k = 0; k < words; ++k) {
      w[k] = var < 6 ? kPatterns[var] : (((k >> (var - 6)) & 1u) ? ~0ull : 0ull);
    }
    w.back() &= tail_mask;
    return w;
  }

  Words run(const Formula& f) const {
    return std::visit(
        overloaded{
            [&](const Var& v) {
              auto it = index.find(v.key());
              if (it == index.end()) {
                throw Error(ErrorCode::UnboundVariable,
                            "variable '" + v.key() + "' is not in the variable ordering");
              }
              return column(it->second);
            },
            [&](const Not& n) {
              Words w = run(n.operand);
              for (auto& x : w) x = ~x;
              w.back() &= tail_mask;
              return w;
            },
            [&](const Binary& b) {
              Words l = run(b.lhs);
              const Words r = run(b.rhs);
              for (std::size_t k = 0; k < words; ++k) {
                switch (b.op) {
                  case BinaryOp::And: l[k] &= r[k]; break;
                  case BinaryOp::Or: l[k] |= r[k]; break;
                  case BinaryOp::Implies: l[k] = ~l[k] | r[k]; break;
                }
              }
              l.back() &= tail_mask;
              return l;
            },
            [&](const Quantified& q) -> Words {
              throw Error(ErrorCode::UnexpandedQuantifier,
                          "quantifier over '" + q.variable +
                              "' must be expanded over its universe before compilation");
            },
        },
        f.node());
  }
};

void collect_atoms(const Formula& f, std::vector<std::string>& out, std::set<std::string>& seen) {
  std::visit(overloaded{
                 [&](const Var& v) {
                   if (seen.insert(v.key()).second) out.push_back(v.key());
                 },
                 [&](const Not& n) { collect_atoms(n.operand, out, seen); },
                 [&](const Binary& b) {
                   collect_atoms(b.lhs, out, seen);
                   collect_atoms(b.rhs, out, seen);
                 },
                 [&](const Quantified& q) {
                   throw Error(ErrorCode::UnexpandedQuantifier,
                               "quantifier over '" + q.variable + "' is not expanded");
                 },
             },
             f.node());
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, kQuant, out);
  return out;
}

bool is_quantifier_free(const Formula& f) {
  return std::visit(overloaded{
                        [](const Var&) { return true; },
                        [](const Not& n) { return is_quantifier_free(n.operand); },
                        [](const Binary& b) {
                          return is_quantifier_free(b.lhs) && is_quantifier_free(b.rhs);
                        },
                        [](const Quantified&) { return false; },
                    },
                    f.node());
}

std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_atoms(f, out, seen);
  return out;
}

bool evaluate(const Formula& f, const std::map<std::string, bool>& assignment) {
  return std::visit(
      overloaded{
          [&](const Var& v) {
            auto it = assignment.find(v.key());
            if (it == assignment.end()) {
              throw Error(ErrorCode::UnboundVariable, "no truth value for '" + v.key() + "'");
            }
            return it->second;
          },
          [&](const Not& n) { return !evaluate(n.operand, assignment); },
          [&](const Binary& b) {
            const bool l = evaluate(b.lhs, assignment);
            const bool r = evaluate(b.rhs, assignment);
            switch (b.op) {
              case BinaryOp::And: return l && r;
              case BinaryOp::Or: return l || r;
              case BinaryOp::Implies: return !l || r;
            }
            return false;
          },
          [&](const Quantified& q) -> bool {
            throw Error(ErrorCode::UnexpandedQuantifier,
                        "cannot evaluate unexpanded quantifier over '" + q.variable + "'");
          },
      },
      f.node());
}

BooleanFunction compile(const Formula& f, std::span<const std::string> ordering) {
  if (ordering.size() > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, "ordering has " + std::to_string(ordering.size()) +
                                              " variables, cap is " + std::to_string(kMaxArity));
  }
  BitCompiler c;
  c.arity = ordering.size();
  const std::size_t rows = std::size_t{1} << c.arity;
  c.words = (rows + 63) / 64;
  c.tail_mask = rows % 64 == 0 ? ~0ull : ((1ull << (rows % 64)) - 1);
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (!c.index.emplace(ordering[i], i).second) {
      throw Error(ErrorCode::DuplicateVariable, "variable '" + ordering[i] + "' listed twice");
    }
  }
  const Words bits = c.run(f);
  std::vector<std::uint32_t> table(rows);
  for (std::size_t a = 0; a < rows; ++a) table[a] = (bits[a / 64] >> (a % 64)) & 1u;
  return BooleanFunction(c.arity, 1, std::move(table));
}

Formula minterm_formula(const BooleanFunction& f, std::span<const std::string> ordering) {
  if (ordering.size() != f.arity_in()) {
    throw Error(ErrorCode::ArityMismatch, "ordering length differs from function arity");
  }
  if (ordering.empty()) throw Error(ErrorCode::InvalidArgument, "normal form needs a variable");
  const std::vector<std::uint32_t> rows = to_minterms(f);
  if (rows.empty()) {
    const Formula v = Formula::atom(ordering[0]);
    return Formula::conj(v, Formula::negate(v));
  }
  std::optional<Formula> sum;
  for (std::uint32_t a : rows) {
    std::optional<Formula> monomial;
    for (std::size_t i = 0; i < ordering.size(); ++i) {
      Formula literal = Formula::atom(ordering[i]);
      if (!((a >> i) & 1u)) literal = Formula::negate(literal);
      monomial = monomial ? Formula::conj(*monomial, literal) : literal;
    }
    sum = sum ? Formula::disj(*sum, *monomial) : *monomial;
  }
  return *sum;
}

}  // namespace markov_fuzzy
