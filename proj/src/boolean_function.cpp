#include "markov_fuzzy/boolean_function.hpp"

#include <algorithm>
#include <string>

#include "markov_fuzzy/belief.hpp"
#include "markov_fuzzy/error.hpp"

namespace markov_fuzzy {

BooleanFunction::BooleanFunction(std::size_t arity_in, std::size_t arity_out,
                                 std::vector<std::uint32_t> table)
    : arity_in_(arity_in), arity_out_(arity_out), table_(std::move(table)) {
  if (arity_in_ > kMaxArity || arity_out_ > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, "truth table arity exceeds " + std::to_string(kMaxArity));
  }
  if (table_.size() != (std::size_t{1} << arity_in_)) {
    throw Error(ErrorCode::ArityMismatch, "truth table for arity " + std::to_string(arity_in_) +
                                              " needs " + std::to_string(std::size_t{1} << arity_in_) +
                                              " rows, got " + std::to_string(table_.size()));
  }
  const std::uint32_t limit = std::uint32_t{1} << arity_out_;
  for (std::uint32_t v : table_) {
    if (v >= limit) {
      throw Error(ErrorCode::InvalidArgument,
                  "output " + std::to_string(v) + " does not fit in " +
                      std::to_string(arity_out_) + " bits");
    }
  }
}

BooleanFunction BooleanFunction::identity(std::size_t arity) {
  std::vector<std::uint32_t> t(std::size_t{1} << arity);
  for (std::uint32_t a = 0; a < t.size(); ++a) t[a] = a;
  return BooleanFunction(arity, arity, std::move(t));
}

BooleanFunction BooleanFunction::constant(std::size_t arity_in, bool value) {
  return BooleanFunction(arity_in, 1,
                         std::vector<std::uint32_t>(std::size_t{1} << arity_in, value ? 1u : 0u));
}

BooleanFunction BooleanFunction::negation() { return BooleanFunction(1, 1, {1, 0}); }

BooleanFunction BooleanFunction::conjunction(std::size_t arity) {
  std::vector<std::uint32_t> t(std::size_t{1} << arity, 0);
  t.back() = 1;
  return BooleanFunction(arity, 1, std::move(t));
}

BooleanFunction BooleanFunction::disjunction(std::size_t arity) {
  std::vector<std::uint32_t> t(std::size_t{1} << arity, 1);
  t.front() = 0;
  return BooleanFunction(arity, 1, std::move(t));
}

BooleanFunction BooleanFunction::implication() {
  // Only (a, b) = (T, F), index 1, is false.
  return BooleanFunction(2, 1, {1, 0, 1, 1});
}

BooleanFunction BooleanFunction::exclusive_or() { return BooleanFunction(2, 1, {0, 1, 1, 0}); }

BooleanFunction BooleanFunction::projection(std::size_t arity_in,
                                            std::span<const std::size_t> coords) {
  for (std::size_t c : coords) {
    if (c >= arity_in) {
      throw Error(ErrorCode::BadCoordinate, "projection coordinate " + std::to_string(c) +
                                                " out of range");
    }
  }
  std::vector<std::uint32_t> t(std::size_t{1} << arity_in);
  for (std::uint32_t a = 0; a < t.size(); ++a) {
    std::uint32_t b = 0;
    for (std::size_t k = 0; k < coords.size(); ++k) b |= ((a >> coords[k]) & 1u) << k;
    t[a] = b;
  }
  return BooleanFunction(arity_in, coords.size(), std::move(t));
}

BooleanFunction compose(const BooleanFunction& g, const BooleanFunction& f) {
  if (f.arity_out() != g.arity_in()) {
    throw Error(ErrorCode::ArityMismatch, "cannot compose: inner function has " +
                                              std::to_string(f.arity_out()) +
                                              " outputs, outer reads " +
                                              std::to_string(g.arity_in()));
  }
  std::vector<std::uint32_t> t(f.table().size());
  for (std::uint32_t a = 0; a < t.size(); ++a) t[a] = g(f(a));
  return BooleanFunction(f.arity_in(), g.arity_out(), std::move(t));
}

BooleanFunction product(const BooleanFunction& f, const BooleanFunction& g) {
  const std::size_t n = f.arity_in() + g.arity_in();
  const std::size_t m = f.arity_out() + g.arity_out();
  if (n > kMaxArity || m > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, "product arity exceeds " + std::to_string(kMaxArity));
  }
  const std::uint32_t low_mask = (std::uint32_t{1} << f.arity_in()) - 1;
  std::vector<std::uint32_t> t(std::size_t{1} << n);
  for (std::uint32_t a = 0; a < t.size(); ++a) {
    t[a] = f(a & low_mask) | (g(a >> f.arity_in()) << f.arity_out());
  }
  return BooleanFunction(n, m, std::move(t));
}

std::vector<std::uint32_t> to_minterms(const BooleanFunction& f) {
  if (f.arity_out() != 1) {
    throw Error(ErrorCode::MultiOutput, "minterms need a single-output function, got " +
                                            std::to_string(f.arity_out()) + " outputs");
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < f.table().size(); ++a) {
    if (f(a)) out.push_back(a);
  }
  return out;
}

BooleanFunction from_minterms(std::size_t arity, std::span<const std::uint32_t> minterms) {
  if (arity > kMaxArity) throw Error(ErrorCode::ArityTooLarge, "arity exceeds cap");
  std::vector<std::uint32_t> t(std::size_t{1} << arity, 0);
  for (std::uint32_t a : minterms) {
    if (a >= t.size()) throw Error(ErrorCode::InvalidArgument, "minterm out of range");
    t[a] = 1;
  }
  return BooleanFunction(arity, 1, std::move(t));
}

}  // namespace markov_fuzzy
