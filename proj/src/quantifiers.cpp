#include "markov_fuzzy/quantifiers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "markov_fuzzy/connectives.hpp"
#include "markov_fuzzy/error.hpp"

namespace markov_fuzzy {

BeliefTable::BeliefTable(std::vector<std::string> universe, std::vector<Belief> p,
                         std::map<Pair, Belief> q_pair)
    : universe_(std::move(universe)), p_(std::move(p)) {
  if (universe_.size() != p_.size()) {
    throw Error(ErrorCode::InvalidArgument, "universe has " + std::to_string(universe_.size()) +
                                                " points but " + std::to_string(p_.size()) +
                                                " beliefs were given");
  }
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (universe_[i] == universe_[j]) {
        throw Error(ErrorCode::InvalidArgument, "duplicate universe point '" + universe_[i] + "'");
      }
    }
  }
  for (const auto& [key, q] : q_pair) {
    auto [i, j] = key;
    if (i == j || i >= size() || j >= size()) {
      throw Error(ErrorCode::BadCoordinate, "bad point pair (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ")");
    }
    if (i > j) std::swap(i, j);
    if (!is_feasible_q(p_[i], p_[j], q)) {
      const QBounds b = q_bounds(p_[i], p_[j]);
      throw Error(ErrorCode::InfeasibleQ,
                  "pair (" + universe_[i] + "," + universe_[j] + "): q = " +
                      std::to_string(q.value()) + " outside [" + std::to_string(b.q_min.value()) +
                      ", " + std::to_string(b.q_max.value()) + "]");
    }
    const Belief snapped = checked_q(p_[i], p_[j], q);
    auto [it, inserted] = q_pair_.emplace(Pair{i, j}, snapped);
    if (!inserted && std::abs(it->second - snapped) > kFeasibilityTolerance) {
      throw Error(ErrorCode::InvalidArgument, "pair (" + universe_[i] + "," + universe_[j] +
                                                  ") given twice with different values");
    }
  }
}

std::optional<Belief> BeliefTable::q(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = q_pair_.find(Pair{i, j});
  if (it == q_pair_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> BeliefTable::index_of(std::string_view label) const {
  auto it = std::find(universe_.begin(), universe_.end(), label);
  if (it == universe_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - universe_.begin());
}

BeliefTable BeliefTable::negated() const {
  std::vector<Belief> np;
  np.reserve(p_.size());
  for (Belief p : p_) np.push_back(fuzzy_not(p));
  std::map<Pair, Belief> nq;
  for (const auto& [key, q] : q_pair_) nq.emplace(key, and_q(p_[key.first], p_[key.second], q));
  return BeliefTable(universe_, std::move(np), std::move(nq));
}

Belief exists_exact(const JointBooleanDist& joint) {
  if (joint.arity() == 0) throw Error(ErrorCode::InvalidArgument, "exists needs arity >= 1");
  return std::clamp(1.0 - joint[0], 0.0, 1.0);
}

namespace {

double partition_upper_bound(const BeliefTable& table) {
  const std::size_t k = table.size();
  if (k <= kExactPartitionLimit) {
    std::vector<std::vector<std::pair<std::size_t, double>>> partners(k);
    for (const auto& [key, q] : table.q_pairs()) {
      const double cost = or_q(table.belief(key.first), table.belief(key.second), q);
      partners[key.first].emplace_back(key.second, cost);
      partners[key.second].emplace_back(key.first, cost);
    }
    std::vector<double> best(std::size_t{1} << k, 0.0);
    for (std::uint32_t mask = 1; mask < best.size(); ++mask) {
      const auto i = static_cast<std::size_t>(std::countr_zero(mask));
      const std::uint32_t rest = mask & ~(std::uint32_t{1} << i);
      double v = best[rest] + table.belief(i);
      for (const auto& [j, cost] : partners[i]) {
        if (rest & (std::uint32_t{1} << j)) {
          v = std::min(v, best[rest & ~(std::uint32_t{1} << j)] + cost);
        }
      }
      best[mask] = v;
    }
    return best.back();
  }
  // Greedy: take disjoint pairs in order of decreasing saving p_i + p_j - or_q.
  struct Candidate {
    double saving;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Candidate> cands;
  for (const auto& [key, q] : table.q_pairs()) {
    const double pi = table.belief(key.first);
    const double pj = table.belief(key.second);
    cands.push_back({pi + pj - or_q(pi, pj, q), key.first, key.second});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.saving > b.saving; });
  std::vector<bool> used(k, false);
  double total = 0.0;
  for (const Candidate& c : cands) {
    if (used[c.i] || used[c.j]) continue;
    used[c.i] = used[c.j] = true;
    total += or_q(table.belief(c.i), table.belief(c.j), *table.q(c.i, c.j));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!used[i]) total += table.belief(i);
  }
  return total;
}

}  // namespace

ConfidenceInterval exists_bounds(const BeliefTable& table) {
  if (table.empty()) throw Error(ErrorCode::EmptyUniverse, "cannot quantify over an empty universe");
  double lo = 0.0;
  double sum = 0.0;
  for (Belief p : table.beliefs()) {
    lo = std::max(lo, p.value());
    sum += p;
  }
  for (const auto& [key, q] : table.q_pairs()) {
    lo = std::max(lo, or_q(table.belief(key.first), table.belief(key.second), q).value());
  }
  double hi = std::min(1.0, sum);
  if (!table.q_pairs().empty()) hi = std::min(hi, partition_upper_bound(table));
  return ConfidenceInterval(lo, hi);
}

ConfidenceInterval forall_bounds(const BeliefTable& table) {
  if (table.empty()) throw Error(ErrorCode::EmptyUniverse, "cannot quantify over an empty universe");
  const ConfidenceInterval dual = exists_bounds(table.negated());
  return ConfidenceInterval(1.0 - dual.hi, 1.0 - dual.lo);
}

Belief ExistsTruncation::push(const JointBooleanDist& joint) {
  if (last_) {
    if (joint.arity() <= last_->arity()) {
      throw Error(ErrorCode::MarginalMismatch, "truncation levels must grow in arity");
    }
    std::vector<std::size_t> coords(last_->arity());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    const JointBooleanDist m = marginal(joint, coords);
    for (std::uint32_t a = 0; a < m.size(); ++a) {
      if (std::abs(m[a] - (*last_)[a]) > kSimplexTolerance) {
        throw Error(ErrorCode::MarginalMismatch,
                    "level of arity " + std::to_string(joint.arity()) +
                        " does not extend the previous level (entry " + std::to_string(a) + ")");
      }
    }
  }
  const Belief v = exists_exact(joint);
  if (!values_.empty() && v < values_.back() - kFeasibilityTolerance) {
    throw Error(ErrorCode::MarginalMismatch, "all-false mass grew between truncation levels");
  }
  last_ = joint;
  values_.push_back(v);
  return v;
}

std::vector<Belief> exists_truncated(std::span<const JointBooleanDist> joints) {
  ExistsTruncation t;
  for (const auto& j : joints) t.push(j);
  return t.values();
}

double ExistsEstimate::hoeffding_radius(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "no samples");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
}

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<double> cumulative_weights(const SamplingStrategy& s, std::size_t universe_size) {
  std::vector<double> cdf(universe_size);
  if (s.weights.empty()) {
    for (std::size_t i = 0; i < universe_size; ++i) {
      cdf[i] = static_cast<double>(i + 1) / static_cast<double>(universe_size);
    }
    return cdf;
  }
  if (s.weights.size() != universe_size) {
    throw Error(ErrorCode::InvalidArgument, "sampling weights do not match the universe size");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < universe_size; ++i) {
    if (!(s.weights[i] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative sampling weight");
    total += s.weights[i];
    cdf[i] = total;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw Error(ErrorCode::NotNormalized, "sampling weights sum to " + std::to_string(total));
  }
  cdf.back() = 1.0;
  return cdf;
}

std::vector<std::size_t> draw_tuple(const SamplingStrategy& s, const std::vector<double>& cdf,
                                    std::uint64_t k) {
  std::vector<std::size_t> tuple(s.tuple_length);
  for (std::size_t d = 0; d < s.tuple_length; ++d) {
    const double u = counter_uniform(s.seed, k, d);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    tuple[d] = std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
  }
  return tuple;
}

class TupleEvaluator {
public:
  TupleEvaluator(const BeliefTable& table, const SampleOptions& options)
      : table_(table), options_(options) {}

  double operator()(std::span<const std::size_t> tuple) const {
    for (std::size_t i : tuple) {
      if (i >= table_.size()) throw Error(ErrorCode::InvalidArgument, "tuple point out of range");
    }
    switch (options_.lift) {
      case LiftPolicy::Independent: {
        double none = 1.0;
        for (std::size_t i : tuple) none *= 1.0 - table_.belief(i);
        return std::clamp(1.0 - none, 0.0, 1.0);
      }
      case LiftPolicy::Pairwise: {
        if (tuple.size() != 2) {
          throw Error(ErrorCode::UnsupportedLiftPolicy,
                      "pairwise lift only covers tuples of length 2");
        }
        const Belief p1 = table_.belief(tuple[0]);
        const Belief p2 = table_.belief(tuple[1]);
        if (tuple[0] == tuple[1]) return p1;
        const auto q = table_.q(tuple[0], tuple[1]);
        if (!q) {
          throw Error(ErrorCode::UnsupportedLiftPolicy,
                      "no q_pair for (" + table_.universe()[tuple[0]] + "," +
                          table_.universe()[tuple[1]] + ")");
        }
        return or_q(p1, p2, *q);
      }
      case LiftPolicy::Custom: {
        if (!options_.custom_lift) {
          throw Error(ErrorCode::UnsupportedLiftPolicy, "custom lift requested without a lift function");
        }
        const JointBooleanDist joint = options_.custom_lift(tuple);
        if (joint.arity() != tuple.size()) {
          throw Error(ErrorCode::ArityMismatch, "custom lift returned the wrong arity");
        }
        for (std::size_t d = 0; d < tuple.size(); ++d) {
          if (std::abs(joint.prob_true(d) - table_.belief(tuple[d])) > kSimplexTolerance) {
            throw Error(ErrorCode::MarginalMismatch,
                        "custom lift does not reproduce p(" + table_.universe()[tuple[d]] + ")");
          }
        }
        return exists_exact(joint);
      }
    }
    throw Error(ErrorCode::UnsupportedLiftPolicy, "unknown lift policy");
  }

private:
  const BeliefTable& table_;
  const SampleOptions& options_;
};

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t draw) noexcept {
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
  h = mix64(h ^ (sample * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
  h = mix64(h ^ (draw * 0xABC98388FB8FAC03ull + 0x2545F4914F6CDD1Dull));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> sample_tuple(const SamplingStrategy& strategy, std::size_t universe_size,
                                      std::uint64_t k) {
  if (strategy.tuple_source) return strategy.tuple_source(k);
  if (universe_size == 0) throw Error(ErrorCode::EmptyUniverse, "cannot sample an empty universe");
  if (strategy.tuple_length == 0) throw Error(ErrorCode::InvalidArgument, "tuple length must be >= 1");
  return draw_tuple(strategy, cumulative_weights(strategy, universe_size), k);
}

ExistsEstimate sample_exists(const BeliefTable& table, const SamplingStrategy& strategy,
                             std::size_t n_samples, const SampleOptions& options) {
  if (table.empty()) throw Error(ErrorCode::EmptyUniverse, "cannot sample an empty universe");
  if (n_samples == 0) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  if (!strategy.tuple_source && strategy.tuple_length == 0) {
    throw Error(ErrorCode::InvalidArgument, "tuple length must be >= 1");
  }
  if (options.lift == LiftPolicy::Pairwise && !strategy.tuple_source && strategy.tuple_length != 2) {
    throw Error(ErrorCode::UnsupportedLiftPolicy,
                "pairwise lift only covers tuples of length 2, got " +
                    std::to_string(strategy.tuple_length));
  }
  const std::vector<double> cdf =
      strategy.tuple_source ? std::vector<double>{} : cumulative_weights(strategy, table.size());
  const TupleEvaluator evaluate(table, options);

  const std::size_t shards = (n_samples + kSampleShardSize - 1) / kSampleShardSize;
  std::vector<double> shard_sums(shards, 0.0);
  auto run_shard = [&](std::size_t s) {
    const std::uint64_t begin = s * kSampleShardSize;
    const std::uint64_t end = std::min<std::uint64_t>(begin + kSampleShardSize, n_samples);
    double sum = 0.0;
    for (std::uint64_t k = begin; k < end; ++k) {
      const std::vector<std::size_t> tuple =
          strategy.tuple_source ? strategy.tuple_source(k) : draw_tuple(strategy, cdf, k);
      sum += evaluate(tuple);
    }
    shard_sums[s] = sum;
  };

  std::size_t threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                             : options.threads;
  threads = std::min(threads, shards);
  if (threads <= 1) {
    for (std::size_t s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < shards; s = next++) {
          try {
            run_shard(s);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = shards;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  double total = 0.0;
  for (double s : shard_sums) total += s;
  ExistsEstimate out;
  out.mean = std::clamp(total / static_cast<double>(n_samples), 0.0, 1.0);
  out.samples = n_samples;
  out.seed = strategy.seed;
  return out;
}

namespace {

Formula substitute(const Formula& f, const std::string& variable, const std::string& point) {
  return std::visit(
      [&](const auto& node) -> Formula {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Var>) {
          if (node.argument && *node.argument == variable) return Formula::apply(node.name, point);
          return f;
        } else if constexpr (std::is_same_v<T, Not>) {
          return Formula::negate(substitute(node.operand, variable, point));
        } else if constexpr (std::is_same_v<T, Binary>) {
          return Formula::binary(node.op, substitute(node.lhs, variable, point),
                                 substitute(node.rhs, variable, point));
        } else {
          if (node.variable == variable) return f;  // shadowed
          return Formula::quantified(node.quantifier, node.variable, node.universe,
                                     substitute(node.body, variable, point));
        }
      },
      static_cast<const std::variant<Var, Not, Binary, Quantified>&>(f.node()));
}

}  // namespace

Formula expand_quantifiers(const Formula& f,
                           const std::map<std::string, std::vector<std::string>>& universes) {
  return std::visit(
      [&](const auto& node) -> Formula {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Var>) {
          return f;
        } else if constexpr (std::is_same_v<T, Not>) {
          return Formula::negate(expand_quantifiers(node.operand, universes));
        } else if constexpr (std::is_same_v<T, Binary>) {
          return Formula::binary(node.op, expand_quantifiers(node.lhs, universes),
                                 expand_quantifiers(node.rhs, universes));
        } else {
          auto it = universes.find(node.universe);
          if (it == universes.end()) {
            throw Error(ErrorCode::InvalidQuantifier, "unknown universe '" + node.universe + "'");
          }
          if (it->second.empty()) {
            throw Error(ErrorCode::EmptyUniverse, "universe '" + node.universe + "' is empty");
          }
          const BinaryOp op = node.quantifier == Quantifier::Exists ? BinaryOp::Or : BinaryOp::And;
          std::optional<Formula> out;
          for (const std::string& point : it->second) {
            Formula term = expand_quantifiers(substitute(node.body, node.variable, point), universes);
            out = out ? Formula::binary(op, *out, term) : term;
          }
          return *out;
        }
      },
      static_cast<const std::variant<Var, Not, Binary, Quantified>&>(f.node()));
}

}  // namespace markov_fuzzy
