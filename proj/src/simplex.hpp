#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace markov_fuzzy::detail {

/// Equality-form linear program: optimise c.x subject to A x = b, x >= 0.
struct EqualityLp {
  std::size_t cols = 0;
  std::vector<std::vector<double>> rows;  // A, one dense row per constraint
  std::vector<double> rhs;                // b
};

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

/// Dense two-phase primal simplex. Dantzig pricing, switching to Bland's rule
/// after a run of degenerate pivots. `cancel` is polled once per pivot and
/// aborts the solve with ErrorCode::Cancelled when it returns true.
LpSolution solve_lp(const EqualityLp& lp, const std::vector<double>& objective, bool maximize,
                    double feasibility_tolerance, const std::function<bool()>& cancel);

}  // namespace markov_fuzzy::detail
