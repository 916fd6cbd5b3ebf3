#pragma once

#include <cstddef>

namespace markov_fuzzy {

/// Largest arity of a dense joint table or truth table (2^24 entries).
inline constexpr std::size_t kMaxArity = 24;

/// Slack allowed when validating that a table lies on the probability simplex.
inline constexpr double kSimplexTolerance = 1e-9;

/// Slack allowed when checking that a joint parameter q lies in [q_min, q_max].
inline constexpr double kFeasibilityTolerance = 1e-12;

/// Confidence p(x) = P(true | x) in a single predicate.
///
/// Converts implicitly from and to double. Construction rejects NaN and values
/// outside [0, 1] by more than kFeasibilityTolerance; rounding noise inside
/// that slack is clamped onto the interval.
class Belief {
public:
  constexpr Belief() noexcept = default;
  Belief(double value);  // NOLINT(google-explicit-constructor)

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }  // NOLINT

private:
  double value_ = 0.0;
};

}  // namespace markov_fuzzy
