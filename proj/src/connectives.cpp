#include "markov_fuzzy/connectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "markov_fuzzy/error.hpp"

namespace markov_fuzzy {

namespace {

std::string describe(double p1, double p2, double q, const QBounds& b) {
  return "q = " + std::to_string(q) + " is infeasible for marginals (" + std::to_string(p1) +
         ", " + std::to_string(p2) + "); admissible range is [" + std::to_string(b.q_min) +
         ", " + std::to_string(b.q_max) + "]";
}

}  // namespace

QBounds q_bounds(Belief p1, Belief p2) {
  return QBounds{
      .q_min = std::max(0.0, 1.0 - (p1 + p2)),
      .q_indep = (1.0 - p1) * (1.0 - p2),
      .q_max = 1.0 - std::max(p1.value(), p2.value()),
  };
}

bool is_feasible_q(Belief p1, Belief p2, double q) {
  const QBounds b = q_bounds(p1, p2);
  return q >= b.q_min - kFeasibilityTolerance && q <= b.q_max + kFeasibilityTolerance;
}

Belief clamp_q(Belief p1, Belief p2, double q) {
  const QBounds b = q_bounds(p1, p2);
  if (std::isnan(q)) throw Error(ErrorCode::InvalidArgument, "q is NaN");
  return std::clamp(q, b.q_min.value(), b.q_max.value());
}

double checked_q(Belief p1, Belief p2, double q) {
  const QBounds b = q_bounds(p1, p2);
  if (!(q >= b.q_min - kFeasibilityTolerance && q <= b.q_max + kFeasibilityTolerance)) {
    throw Error(ErrorCode::InfeasibleQ, describe(p1, p2, q, b));
  }
  return std::clamp(q, b.q_min.value(), b.q_max.value());
}

Belief fuzzy_not(Belief p) { return 1.0 - p; }

Belief and_q(Belief p1, Belief p2, Belief q) {
  const double qf = checked_q(p1, p2, q);
  return std::clamp(p1 + p2 + qf - 1.0, 0.0, 1.0);
}

Belief or_q(Belief p1, Belief p2, Belief q) {
  return 1.0 - checked_q(p1, p2, q);
}

Belief implies_q(Belief p1, Belief p2, Belief q) {
  const double qf = checked_q(p1, p2, q);
  return std::clamp(p2 + qf, 0.0, 1.0);
}

std::string_view to_string(Connective kind) noexcept {
  switch (kind) {
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Implies: return "implies";
  }
  return "?";
}

std::string_view to_string(Flavor flavor) noexcept {
  switch (flavor) {
    case Flavor::Min: return "min";
    case Flavor::Indep: return "indep";
    case Flavor::Max: return "max";
  }
  return "?";
}

Belief classic(Belief p1, Belief p2, Connective kind, Flavor flavor) {
  const double a = p1;
  const double b = p2;
  switch (kind) {
    case Connective::And:
      switch (flavor) {
        case Flavor::Min: return std::max(0.0, a + b - 1.0);
        case Flavor::Indep: return a * b;
        case Flavor::Max: return std::min(a, b);
      }
      break;
    case Connective::Or:
      switch (flavor) {
        case Flavor::Min: return std::max(a, b);
        case Flavor::Indep: return std::clamp(a + b - a * b, 0.0, 1.0);
        case Flavor::Max: return std::min(1.0, a + b);
      }
      break;
    case Connective::Implies:
      switch (flavor) {
        case Flavor::Min: return std::max(b, 1.0 - a);
        case Flavor::Indep: return std::clamp(1.0 - a + a * b, 0.0, 1.0);
        case Flavor::Max: return std::min(1.0, 1.0 + b - a);
      }
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown connective");
}

Belief q_for_flavor(Belief p1, Belief p2, Connective kind, Flavor flavor) {
  const QBounds b = q_bounds(p1, p2);
  if (flavor == Flavor::Indep) return b.q_indep;
  const bool low = flavor == Flavor::Min;
  if (kind == Connective::Or) return low ? b.q_max : b.q_min;
  return low ? b.q_min : b.q_max;
}

Belief connective_q(Belief p1, Belief p2, Belief q, Connective kind) {
  switch (kind) {
    case Connective::And: return and_q(p1, p2, q);
    case Connective::Or: return or_q(p1, p2, q);
    case Connective::Implies: return implies_q(p1, p2, q);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown connective");
}

DualTriple de_morgan_dual(Belief p1, Belief p2, Belief q) {
  return DualTriple{fuzzy_not(p1), fuzzy_not(p2), and_q(p1, p2, q)};
}

}  // namespace markov_fuzzy
