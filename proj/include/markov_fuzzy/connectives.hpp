#pragma once

#include <string_view>
#include <tuple>

#include "markov_fuzzy/belief.hpp"

namespace markov_fuzzy {

// Binary fuzzy connectives parametrised by q, the joint confidence that both
// predicates are false. Given marginals (p1, p2), q ranges over
// [q_min, q_max] and fixes the 2x2 joint table completely.

struct QBounds {
  Belief q_min;
  Belief q_indep;
  Belief q_max;
};

QBounds q_bounds(Belief p1, Belief p2);

bool is_feasible_q(Belief p1, Belief p2, double q);

/// Projects q onto [q_min, q_max].
Belief clamp_q(Belief p1, Belief p2, double q);

/// Returns q snapped onto [q_min, q_max] when within kFeasibilityTolerance of
/// it; throws InfeasibleQ otherwise.
double checked_q(Belief p1, Belief p2, double q);

Belief fuzzy_not(Belief p);

/// P(both true) = p1 + p2 + q - 1.
Belief and_q(Belief p1, Belief p2, Belief q);
/// P(at least one true) = 1 - q.
Belief or_q(Belief p1, Belief p2, Belief q);
/// 1 - P(first true, second false) = p2 + q.
Belief implies_q(Belief p1, Belief p2, Belief q);

enum class Connective { And, Or, Implies };
/// min and max name the lower and upper ends of the family; indep is the
/// conditionally independent member.
enum class Flavor { Min, Indep, Max };

std::string_view to_string(Connective kind) noexcept;
std::string_view to_string(Flavor flavor) noexcept;

/// Closed forms of the classic connectives, e.g. and/min = max(0, p1 + p2 - 1).
Belief classic(Belief p1, Belief p2, Connective kind, Flavor flavor);

/// The q that makes the q-connective coincide with classic(kind, flavor).
/// and_q and implies_q increase with q, so their min flavor sits at q_min;
/// or_q decreases with q, so or/min sits at q_max.
Belief q_for_flavor(Belief p1, Belief p2, Connective kind, Flavor flavor);

/// q-connective dispatch.
Belief connective_q(Belief p1, Belief p2, Belief q, Connective kind);

struct DualTriple {
  Belief p1;
  Belief p2;
  Belief q;
};

/// (1 - p1, 1 - p2, and_q(p1, p2, q)): the joint of the negated predicates,
/// so that or_q(p1, p2, q) = 1 - and_q(dual.p1, dual.p2, dual.q).
DualTriple de_morgan_dual(Belief p1, Belief p2, Belief q);

}  // namespace markov_fuzzy
