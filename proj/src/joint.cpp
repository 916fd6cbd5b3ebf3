#include "markov_fuzzy/joint.hpp"

#include <cmath>

#include "markov_fuzzy/connectives.hpp"

namespace markov_fuzzy {

Belief::Belief(double value) {
  if (std::isnan(value) || value < -kFeasibilityTolerance || value > 1.0 + kFeasibilityTolerance) {
    throw Error(ErrorCode::InvalidArgument,
                "belief " + std::to_string(value) + " outside [0, 1]");
  }
  value_ = std::clamp(value, 0.0, 1.0);
}

double JointBooleanDist::prob_true(std::size_t coord) const {
  if (coord >= arity_) {
    throw Error(ErrorCode::BadCoordinate, "coordinate " + std::to_string(coord) +
                                              " out of range for arity " + std::to_string(arity_));
  }
  const std::uint32_t mask = std::uint32_t{1} << coord;
  double total = 0.0;
  for (std::uint32_t a = 0; a < probs_.size(); ++a) {
    if (a & mask) total += probs_[a];
  }
  return total;
}

JointBooleanDist make_joint(std::size_t arity, std::vector<double> probs) {
  if (arity > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, "arity " + std::to_string(arity) +
                                              " exceeds the dense cap " + std::to_string(kMaxArity));
  }
  if (probs.size() != (std::size_t{1} << arity)) {
    throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(std::size_t{1} << arity) +
                                              " entries for arity " + std::to_string(arity) +
                                              ", got " + std::to_string(probs.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    double& p = probs[i];
    if (std::isnan(p)) throw Error(ErrorCode::NotNormalized, "NaN entry at index " + std::to_string(i));
    if (p < -kSimplexTolerance) {
      throw Error(ErrorCode::NegativeMass,
                  "entry " + std::to_string(i) + " is negative (" + std::to_string(p) + ")");
    }
    p = std::max(p, 0.0);
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw Error(ErrorCode::NotNormalized, "entries sum to " + std::to_string(total));
  }
  if (total != 1.0) {
    for (double& p : probs) p /= total;
  }
  return JointBooleanDist(arity, std::move(probs));
}

JointBooleanDist independent_product(std::span<const Belief> factors) {
  if (factors.empty()) {
    throw Error(ErrorCode::InvalidArgument, "independent product needs at least one factor");
  }
  if (factors.size() > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, "too many factors: " + std::to_string(factors.size()));
  }
  std::vector<double> probs(std::size_t{1} << factors.size());
  probs[0] = 1.0;
  std::size_t filled = 1;
  for (const Belief p : factors) {
    // Entries with the new bit set are written first so the low half can be
    // overwritten in place afterwards.
    for (std::size_t a = 0; a < filled; ++a) probs[a + filled] = probs[a] * p.value();
    for (std::size_t a = 0; a < filled; ++a) probs[a] *= 1.0 - p.value();
    filled *= 2;
  }
  return JointBooleanDist(factors.size(), std::move(probs));
}

JointBooleanDist marginal(const JointBooleanDist& dist, std::span<const std::size_t> coords) {
  if (coords.empty()) throw Error(ErrorCode::BadCoordinate, "marginal needs at least one coordinate");
  std::uint32_t seen = 0;
  for (std::size_t c : coords) {
    if (c >= dist.arity()) {
      throw Error(ErrorCode::BadCoordinate, "coordinate " + std::to_string(c) +
                                                " out of range for arity " +
                                                std::to_string(dist.arity()));
    }
    if (seen & (std::uint32_t{1} << c)) {
      throw Error(ErrorCode::BadCoordinate, "coordinate " + std::to_string(c) + " repeated");
    }
    seen |= std::uint32_t{1} << c;
  }
  std::vector<double> out(std::size_t{1} << coords.size(), 0.0);
  for (std::uint32_t a = 0; a < dist.size(); ++a) {
    std::uint32_t b = 0;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      b |= ((a >> coords[k]) & 1u) << k;
    }
    out[b] += dist[a];
  }
  return JointBooleanDist(coords.size(), std::move(out));
}

JointBooleanDist pair_from_pq(Belief p1, Belief p2, Belief q) {
  const double qf = checked_q(p1, p2, q);
  // Index order: FF, TF, FT, TT with the first letter for predicate 1.
  return make_joint(2, {qf, (1.0 - p2) - qf, (1.0 - p1) - qf, p1 + p2 - 1.0 + qf});
}

JointBooleanDist pushforward(const JointBooleanDist& dist, const BooleanFunction& f) {
  if (f.arity_in() != dist.arity()) {
    throw Error(ErrorCode::ArityMismatch, "function reads " + std::to_string(f.arity_in()) +
                                              " inputs, joint has arity " +
                                              std::to_string(dist.arity()));
  }
  std::vector<double> out(std::size_t{1} << f.arity_out(), 0.0);
  const auto table = f.table();
  for (std::uint32_t a = 0; a < dist.size(); ++a) out[table[a]] += dist[a];
  return JointBooleanDist(f.arity_out(), std::move(out));
}

}  // namespace markov_fuzzy
