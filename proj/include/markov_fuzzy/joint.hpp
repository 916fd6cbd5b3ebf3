#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "markov_fuzzy/belief.hpp"
#include "markov_fuzzy/boolean_function.hpp"
#include "markov_fuzzy/error.hpp"

namespace markov_fuzzy {

/// Probability table over B^n: the joint confidence of n predicates at one
/// point of the universe.
///
/// Entry `index` is the probability of the assignment whose variable i
/// (0-based) is true iff bit i of `index` is set. For n = 2 that is
/// [p_FF, p_TF, p_FT, p_TT] with the first letter naming variable 0.
class JointBooleanDist {
public:
  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::uint32_t index) const { return probs_[index]; }

  /// Marginal confidence that coordinate `coord` is true.
  double prob_true(std::size_t coord) const;

  friend bool operator==(const JointBooleanDist&, const JointBooleanDist&) = default;

private:
  JointBooleanDist(std::size_t arity, std::vector<double> probs)
      : arity_(arity), probs_(std::move(probs)) {}

  std::size_t arity_;
  std::vector<double> probs_;

  friend JointBooleanDist make_joint(std::size_t, std::vector<double>);
  friend JointBooleanDist independent_product(std::span<const Belief>);
  friend JointBooleanDist marginal(const JointBooleanDist&, std::span<const std::size_t>);
  friend JointBooleanDist pushforward(const JointBooleanDist&, const BooleanFunction&);
};

/// Validates a table. Entries in [-kSimplexTolerance, 0) are set to zero and a
/// sum within kSimplexTolerance of 1 is divided out exactly.
JointBooleanDist make_joint(std::size_t arity, std::vector<double> probs);

/// Conditionally independent lift: entry a is prod_i (a_i ? p_i : 1 - p_i).
JointBooleanDist independent_product(std::span<const Belief> factors);

inline JointBooleanDist independent_product(std::initializer_list<Belief> factors) {
  return independent_product(std::span<const Belief>(factors.begin(), factors.size()));
}

/// Sums out every coordinate not listed. Coordinates are 0-based; the result's
/// variable k is input coordinate coords[k].
JointBooleanDist marginal(const JointBooleanDist& dist, std::span<const std::size_t> coords);

inline JointBooleanDist marginal(const JointBooleanDist& dist,
                                 std::initializer_list<std::size_t> coords) {
  return marginal(dist, std::span<const std::size_t>(coords.begin(), coords.size()));
}

/// Two-predicate table with marginals (p1, p2) and P(both false) = q.
JointBooleanDist pair_from_pq(Belief p1, Belief p2, Belief q);

/// Law of f(A) for A distributed as `dist`. Preimage mass is accumulated in
/// ascending input order.
JointBooleanDist pushforward(const JointBooleanDist& dist, const BooleanFunction& f);

/// Distribution on an arbitrary finite alphabet.
template <class Label>
class FiniteDist {
public:
  FiniteDist(std::vector<Label> alphabet, std::vector<double> probs)
      : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
    if (alphabet_.size() != probs_.size()) {
      throw Error(ErrorCode::InvalidArgument, "alphabet and probabilities differ in length");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (!(probs_[i] >= -kSimplexTolerance)) {
        throw Error(ErrorCode::NegativeMass, "negative probability in finite distribution");
      }
      probs_[i] = std::max(probs_[i], 0.0);
      total += probs_[i];
      for (std::size_t j = 0; j < i; ++j) {
        if (alphabet_[j] == alphabet_[i]) {
          throw Error(ErrorCode::InvalidArgument, "duplicate label in finite distribution");
        }
      }
    }
    if (std::abs(total - 1.0) > kSimplexTolerance) {
      throw Error(ErrorCode::NotNormalized, "finite distribution does not sum to 1");
    }
  }

  std::span<const Label> alphabet() const noexcept { return alphabet_; }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Zero for labels outside the alphabet.
  double probability(const Label& label) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
    return it == alphabet_.end() ? 0.0 : probs_[static_cast<std::size_t>(it - alphabet_.begin())];
  }

private:
  std::vector<Label> alphabet_;
  std::vector<double> probs_;
};

/// Pushes `dist` through value_table[a] and aggregates by label. Labels appear
/// in order of first occurrence scanning ascending input index.
template <class Label>
FiniteDist<Label> pushforward_finite(const JointBooleanDist& dist,
                                     std::span<const Label> value_table) {
  if (value_table.size() != dist.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "value table has " + std::to_string(value_table.size()) +
                    " entries, joint has " + std::to_string(dist.size()));
  }
  std::vector<Label> labels;
  std::vector<double> mass;
  for (std::size_t a = 0; a < value_table.size(); ++a) {
    auto it = std::find(labels.begin(), labels.end(), value_table[a]);
    if (it == labels.end()) {
      labels.push_back(value_table[a]);
      mass.push_back(dist.probs()[a]);
    } else {
      mass[static_cast<std::size_t>(it - labels.begin())] += dist.probs()[a];
    }
  }
  return FiniteDist<Label>(std::move(labels), std::move(mass));
}

}  // namespace markov_fuzzy
