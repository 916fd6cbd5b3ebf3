#include "markov_fuzzy/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "markov_fuzzy/error.hpp"
#include "markov_fuzzy/joint.hpp"
#include "simplex.hpp"

namespace markov_fuzzy {

PartialJointSpec::PartialJointSpec(std::vector<Belief> marginals, std::map<Pair, Belief> pairwise,
                                   bool independent)
    : marginals_(std::move(marginals)), independent_(independent) {
  if (marginals_.empty()) throw Error(ErrorCode::InvalidArgument, "spec needs at least one marginal");
  if (marginals_.size() > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, "spec arity " + std::to_string(marginals_.size()) +
                                              " exceeds " + std::to_string(kMaxArity));
  }
  if (independent_ && !pairwise.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "an independent spec cannot also carry pairwise constraints");
  }
  for (const auto& [key, q] : pairwise) {
    auto [i, j] = key;
    if (i == j || i >= arity() || j >= arity()) {
      throw Error(ErrorCode::BadCoordinate, "bad pair (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ") for arity " +
                                                std::to_string(arity()));
    }
    if (i > j) std::swap(i, j);
    if (!is_feasible_q(marginals_[i], marginals_[j], q)) {
      const QBounds b = q_bounds(marginals_[i], marginals_[j]);
      throw Error(ErrorCode::InfeasibleQ,
                  "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): q = " +
                      std::to_string(q.value()) + " outside [" + std::to_string(b.q_min.value()) +
                      ", " + std::to_string(b.q_max.value()) + "]");
    }
    const Belief snapped = checked_q(marginals_[i], marginals_[j], q);
    auto [it, inserted] = pairwise_.emplace(Pair{i, j}, snapped);
    if (!inserted && std::abs(it->second - snapped) > kFeasibilityTolerance) {
      throw Error(ErrorCode::InvalidArgument, "pair (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) +
                                                  ") given twice with different values");
    }
  }
}

ConfidenceInterval::ConfidenceInterval(double lo_value, double hi_value) {
  if (lo_value > hi_value + kConstraintTolerance) {
    throw Error(ErrorCode::InvalidArgument, "interval lower end " + std::to_string(lo_value) +
                                                " exceeds upper end " + std::to_string(hi_value));
  }
  if (lo_value > hi_value) lo_value = hi_value = 0.5 * (lo_value + hi_value);
  lo = lo_value;
  hi = hi_value;
}

namespace {

void check_function(const PartialJointSpec& spec, const BooleanFunction& f) {
  if (f.arity_out() != 1) {
    throw Error(ErrorCode::MultiOutput, "bounds need a single-output function");
  }
  if (f.arity_in() != spec.arity()) {
    throw Error(ErrorCode::ArityMismatch, "function reads " + std::to_string(f.arity_in()) +
                                              " predicates, spec has " +
                                              std::to_string(spec.arity()));
  }
}

detail::EqualityLp constraint_system(const PartialJointSpec& spec) {
  const std::size_t n = spec.arity();
  const std::size_t cols = std::size_t{1} << n;
  detail::EqualityLp lp;
  lp.cols = cols;
  lp.rows.emplace_back(cols, 1.0);
  lp.rhs.push_back(1.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t a = 0; a < cols; ++a) row[a] = (a >> i) & 1u ? 1.0 : 0.0;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(spec.marginals()[i]);
  }
  for (const auto& [key, q] : spec.pairwise()) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t a = 0; a < cols; ++a) {
      row[a] = ((a >> key.first) & 1u) == 0 && ((a >> key.second) & 1u) == 0 ? 1.0 : 0.0;
    }
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(q);
  }
  return lp;
}

std::vector<double> objective_of(const BooleanFunction& f) {
  std::vector<double> c(f.table().size());
  for (std::size_t a = 0; a < c.size(); ++a) c[a] = f.table()[a] ? 1.0 : 0.0;
  return c;
}

double independent_value(const PartialJointSpec& spec, const BooleanFunction& f) {
  return pushforward(independent_product(spec.marginals()), f)[1];
}

}  // namespace

ConfidenceInterval exact_bounds(const PartialJointSpec& spec, const BooleanFunction& f,
                                const CancelCheck& cancel) {
  if (spec.arity() > kMaxBoundsArity) {
    throw Error(ErrorCode::ArityTooLarge, "exact bounds support arity <= " +
                                              std::to_string(kMaxBoundsArity) + ", got " +
                                              std::to_string(spec.arity()));
  }
  check_function(spec, f);
  if (spec.independent()) {
    const double v = independent_value(spec, f);
    return ConfidenceInterval(v, v);
  }
  const detail::EqualityLp lp = constraint_system(spec);
  const std::vector<double> c = objective_of(f);
  const auto lo = detail::solve_lp(lp, c, false, kConstraintTolerance, cancel);
  if (lo.status == detail::LpStatus::Infeasible) {
    throw Error(ErrorCode::InfeasibleSpec, "no joint table satisfies the marginal and pairwise constraints");
  }
  const auto hi = detail::solve_lp(lp, c, true, kConstraintTolerance, cancel);
  return ConfidenceInterval(std::clamp(lo.value, 0.0, 1.0), std::clamp(hi.value, 0.0, 1.0));
}

namespace {

// Solves the square system formed by `cols` of the constraint matrix. Returns
// false when it is singular.
bool solve_square(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<std::size_t>& cols, std::vector<double>& x) {
  const std::size_t k = cols.size();
  std::vector<std::vector<double>> m(k, std::vector<double>(k + 1));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r][c] = a[r][cols[c]];
    m[r][k] = b[r];
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-10) return false;
    std::swap(m[piv], m[c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t j = c; j <= k; ++j) m[r][j] -= f * m[c][j];
    }
  }
  x.assign(k, 0.0);
  for (std::size_t c = k; c-- > 0;) {
    double s = m[c][k];
    for (std::size_t j = c + 1; j < k; ++j) s -= m[c][j] * x[j];
    x[c] = s / m[c][c];
  }
  return true;
}

}  // namespace

ConfidenceInterval brute_force_bounds(const PartialJointSpec& spec, const BooleanFunction& f,
                                      double grid_step, const CancelCheck& cancel) {
  if (spec.arity() > kMaxOracleArity) {
    throw Error(ErrorCode::ArityTooLarge, "the enumeration oracle supports arity <= " +
                                              std::to_string(kMaxOracleArity));
  }
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw Error(ErrorCode::InvalidArgument, "grid step must lie in (0, 0.1]");
  }
  check_function(spec, f);
  if (spec.independent()) {
    const double v = independent_value(spec, f);
    return ConfidenceInterval(v, v);
  }
  const detail::EqualityLp full = constraint_system(spec);
  const std::size_t cols = full.cols;

  // Keep a maximal independent subset of the constraint rows. Each kept row
  // is also stored reduced against the earlier ones, with its pivot column.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<std::vector<double>> reduced;
  std::vector<double> reduced_b;
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < full.rows.size(); ++r) {
    std::vector<double> row = full.rows[r];
    double rhs = full.rhs[r];
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      const double factor = row[pivots[k]] / reduced[k][pivots[k]];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) row[j] -= factor * reduced[k][j];
      rhs -= factor * reduced_b[k];
    }
    double biggest = 0.0;
    std::size_t pivot = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (std::abs(row[j]) > biggest) {
        biggest = std::abs(row[j]);
        pivot = j;
      }
    }
    if (biggest < 1e-9) {
      if (std::abs(rhs) > grid_step) {
        throw Error(ErrorCode::InfeasibleSpec, "constraints are contradictory");
      }
      continue;
    }
    reduced.push_back(std::move(row));
    reduced_b.push_back(rhs);
    pivots.push_back(pivot);
    a.push_back(full.rows[r]);
    b.push_back(full.rhs[r]);
  }

  const std::size_t rank = a.size();
  const std::vector<double> c = objective_of(f);
  double strict_lo = std::numeric_limits<double>::infinity();
  double strict_hi = -strict_lo;
  double loose_lo = strict_lo;
  double loose_hi = strict_hi;

  std::vector<std::size_t> support(rank);
  for (std::size_t k = 0; k < rank; ++k) support[k] = k;
  std::vector<double> x;
  for (;;) {
    if (cancel && cancel()) throw Error(ErrorCode::Cancelled, "enumeration cancelled");
    if (solve_square(a, b, support, x)) {
      const double worst = *std::min_element(x.begin(), x.end());
      double value = 0.0;
      for (std::size_t k = 0; k < rank; ++k) value += c[support[k]] * x[k];
      if (worst >= -kConstraintTolerance) {
        strict_lo = std::min(strict_lo, value);
        strict_hi = std::max(strict_hi, value);
      } else if (worst >= -grid_step) {
        loose_lo = std::min(loose_lo, value);
        loose_hi = std::max(loose_hi, value);
      }
    }
    // Next combination of `rank` columns out of `cols`, lexicographically.
    std::size_t k = rank;
    while (k > 0 && support[k - 1] == cols - rank + (k - 1)) --k;
    if (k == 0) break;
    ++support[k - 1];
    for (std::size_t j = k; j < rank; ++j) support[j] = support[j - 1] + 1;
  }

  if (strict_lo <= strict_hi) {
    return ConfidenceInterval(std::clamp(strict_lo, 0.0, 1.0), std::clamp(strict_hi, 0.0, 1.0));
  }
  if (loose_lo <= loose_hi) {
    return ConfidenceInterval(std::clamp(loose_lo, 0.0, 1.0), std::clamp(loose_hi, 0.0, 1.0));
  }
  throw Error(ErrorCode::InfeasibleSpec, "no joint table satisfies the constraints within the grid step");
}

ConfidenceInterval classic_binary_bounds(Belief p1, Belief p2, Connective kind) {
  return ConfidenceInterval(classic(p1, p2, kind, Flavor::Min), classic(p1, p2, kind, Flavor::Max));
}

}  // namespace markov_fuzzy
