#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "markov_fuzzy/belief.hpp"
#include "markov_fuzzy/bounds.hpp"
#include "markov_fuzzy/formula.hpp"
#include "markov_fuzzy/joint.hpp"

namespace markov_fuzzy {

/// Beliefs p(x) of one predicate over a finite universe, optionally with
/// pairwise q(x1, x2) = P(false at x1, false at x2). Pairs are stored with
/// the smaller point index first.
class BeliefTable {
public:
  using Pair = std::pair<std::size_t, std::size_t>;

  BeliefTable(std::vector<std::string> universe, std::vector<Belief> p,
              std::map<Pair, Belief> q_pair = {});

  std::size_t size() const noexcept { return universe_.size(); }
  bool empty() const noexcept { return universe_.empty(); }
  const std::vector<std::string>& universe() const noexcept { return universe_; }
  const std::vector<Belief>& beliefs() const noexcept { return p_; }
  Belief belief(std::size_t i) const { return p_.at(i); }
  const std::map<Pair, Belief>& q_pairs() const noexcept { return q_pair_; }
  std::optional<Belief> q(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Table of the negated predicate: p -> 1 - p and q -> P(true, true) of
  /// the original pair.
  BeliefTable negated() const;

private:
  std::vector<std::string> universe_;
  std::vector<Belief> p_;
  std::map<Pair, Belief> q_pair_;
};

/// Confidence that at least one coordinate is true: 1 - P(all false).
Belief exists_exact(const JointBooleanDist& joint);

/// Bounds on the existential confidence from the table alone. Lower end: the
/// best singleton or pair. Upper end: min(1, sum of p) and, when pairwise
/// data exists, the cheapest partition of the universe into pairs and
/// singletons (exact up to kExactPartitionLimit points, greedy beyond).
ConfidenceInterval exists_bounds(const BeliefTable& table);

/// Universal quantifier through the negated table.
ConfidenceInterval forall_bounds(const BeliefTable& table);

inline constexpr std::size_t kExactPartitionLimit = 20;

/// Existential confidence over growing finite truncations. Each pushed joint
/// must extend the previous one: its marginal on the earlier coordinates has
/// to match within kSimplexTolerance, otherwise MarginalMismatch is thrown.
class ExistsTruncation {
public:
  Belief push(const JointBooleanDist& joint);
  const std::vector<Belief>& values() const noexcept { return values_; }

private:
  std::optional<JointBooleanDist> last_;
  std::vector<Belief> values_;
};

std::vector<Belief> exists_truncated(std::span<const JointBooleanDist> joints);

/// Distribution over tuples of universe points. Tuples are either drawn
/// i.i.d. from `weights` (uniform when empty) or produced by `tuple_source`,
/// which must be a pure function of the sample index.
struct SamplingStrategy {
  std::vector<double> weights;
  std::function<std::vector<std::size_t>(std::uint64_t)> tuple_source;
  std::size_t tuple_length = 1;
  std::uint64_t seed = 0;
};

enum class LiftPolicy {
  /// Conditionally independent coordinates.
  Independent,
  /// Tuples of length 2 lifted with the table's q_pair. A repeated point is
  /// the same predicate observed twice, so it gets q = 1 - p.
  Pairwise,
  /// Caller-supplied joint per tuple.
  Custom,
};

struct SampleOptions {
  LiftPolicy lift = LiftPolicy::Independent;
  std::function<JointBooleanDist(std::span<const std::size_t>)> custom_lift;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend
  /// on this value.
  std::size_t threads = 1;
};

struct ExistsEstimate {
  Belief mean;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  /// Hoeffding half-width sqrt(ln(2/delta) / (2N)).
  double hoeffding_radius(double delta) const;
};

/// Samples per shard; shard sums are reduced in ascending shard order.
inline constexpr std::size_t kSampleShardSize = 1024;

/// Monte-Carlo estimate of the expected existential confidence of a tuple
/// drawn by `strategy`.
ExistsEstimate sample_exists(const BeliefTable& table, const SamplingStrategy& strategy,
                             std::size_t n_samples, const SampleOptions& options = {});

/// Uniform double in [0, 1) that depends only on (seed, sample, draw).
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t draw) noexcept;

/// The tuple used for sample index `k`.
std::vector<std::size_t> sample_tuple(const SamplingStrategy& strategy, std::size_t universe_size,
                                      std::uint64_t k);

/// Replaces every quantifier by the OR (exists) or AND (forall) of its body
/// over the points of its universe; applications P(x) of the bound variable
/// become atoms P(point).
Formula expand_quantifiers(const Formula& f,
                           const std::map<std::string, std::vector<std::string>>& universes);

}  // namespace markov_fuzzy
