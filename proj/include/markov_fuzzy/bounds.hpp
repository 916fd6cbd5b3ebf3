#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "markov_fuzzy/belief.hpp"
#include "markov_fuzzy/boolean_function.hpp"
#include "markov_fuzzy/connectives.hpp"

namespace markov_fuzzy {

/// Largest arity accepted by exact_bounds (an LP over 2^12 table entries).
inline constexpr std::size_t kMaxBoundsArity = 12;

/// Largest arity accepted by the enumeration oracle.
inline constexpr std::size_t kMaxOracleArity = 4;

/// Equality tolerance for the bound LPs.
inline constexpr double kConstraintTolerance = 1e-9;

/// Returns true to abort a long solve.
using CancelCheck = std::function<bool()>;

/// What is known about a joint over n predicates: the marginals, optionally
/// some pairwise q_ij = P(i false, j false), or full conditional independence.
/// Coordinates are 0-based; pairs are stored with i < j.
class PartialJointSpec {
public:
  using Pair = std::pair<std::size_t, std::size_t>;

  explicit PartialJointSpec(std::vector<Belief> marginals, std::map<Pair, Belief> pairwise = {},
                            bool independent = false);

  std::size_t arity() const noexcept { return marginals_.size(); }
  const std::vector<Belief>& marginals() const noexcept { return marginals_; }
  const std::map<Pair, Belief>& pairwise() const noexcept { return pairwise_; }
  bool independent() const noexcept { return independent_; }

private:
  std::vector<Belief> marginals_;
  std::map<Pair, Belief> pairwise_;
  bool independent_;
};

struct ConfidenceInterval {
  Belief lo;
  Belief hi;

  ConfidenceInterval() = default;
  /// Requires lo <= hi up to kConstraintTolerance; a rounding-level inversion
  /// collapses to the midpoint.
  ConfidenceInterval(double lo, double hi);

  double width() const noexcept { return hi - lo; }
  bool contains(double v, double tolerance = 0.0) const noexcept {
    return v >= lo - tolerance && v <= hi + tolerance;
  }
};

/// Tightest [lo, hi] on P(f = true) over every joint table consistent with
/// `spec`, found by solving the min and max linear programs exactly.
ConfidenceInterval exact_bounds(const PartialJointSpec& spec, const BooleanFunction& f,
                                const CancelCheck& cancel = {});

/// Independent oracle for exact_bounds on small arities. Enumerates every
/// basic solution of the constraint system (all candidate vertices of the
/// polytope) and keeps those whose entries are nonnegative; a spec whose
/// best candidate violates nonnegativity by more than grid_step is rejected
/// as infeasible.
ConfidenceInterval brute_force_bounds(const PartialJointSpec& spec, const BooleanFunction& f,
                                      double grid_step, const CancelCheck& cancel = {});

/// Closed-form [min, max] flavors of a binary connective from marginals alone.
ConfidenceInterval classic_binary_bounds(Belief p1, Belief p2, Connective kind);

}  // namespace markov_fuzzy
