#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace markov_fuzzy {

/// A map L: B^n -> B^m stored as a dense truth table.
///
/// Inputs and outputs are bit-packed: variable i (0-based) of an input
/// assignment is bit i of the table index, and output coordinate j is bit j
/// of the stored value.
class BooleanFunction {
public:
  BooleanFunction(std::size_t arity_in, std::size_t arity_out,
                  std::vector<std::uint32_t> table);

  static BooleanFunction identity(std::size_t arity);
  static BooleanFunction constant(std::size_t arity_in, bool value);
  static BooleanFunction negation();
  static BooleanFunction conjunction(std::size_t arity = 2);
  static BooleanFunction disjunction(std::size_t arity = 2);
  static BooleanFunction implication();
  static BooleanFunction exclusive_or();
  /// Selects the listed input coordinates, in order, as the output bits.
  static BooleanFunction projection(std::size_t arity_in,
                                    std::span<const std::size_t> coords);

  std::size_t arity_in() const noexcept { return arity_in_; }
  std::size_t arity_out() const noexcept { return arity_out_; }
  std::span<const std::uint32_t> table() const noexcept { return table_; }

  std::uint32_t operator()(std::uint32_t input) const { return table_[input]; }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
  std::size_t arity_in_;
  std::size_t arity_out_;
  std::vector<std::uint32_t> table_;
};

/// g after f. Requires f.arity_out() == g.arity_in().
BooleanFunction compose(const BooleanFunction& g, const BooleanFunction& f);

/// Blockwise product f x g: f reads the low f.arity_in() input bits and
/// writes the low f.arity_out() output bits; g takes the bits above.
BooleanFunction product(const BooleanFunction& f, const BooleanFunction& g);

/// Input assignments mapped to true, ascending. Requires a single output.
std::vector<std::uint32_t> to_minterms(const BooleanFunction& f);

/// Single-output function that is true exactly on the given assignments.
BooleanFunction from_minterms(std::size_t arity, std::span<const std::uint32_t> minterms);

}  // namespace markov_fuzzy
