#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "markov_fuzzy/error.hpp"

namespace markov_fuzzy::detail {

namespace {

constexpr double kPivotTolerance = 1e-11;
constexpr double kCostTolerance = 1e-11;
constexpr int kDegenerateRunBeforeBland = 50;

class Tableau {
public:
  Tableau(const EqualityLp& lp, const std::function<bool()>& cancel)
      : m_(lp.rows.size()), n_(lp.cols), width_(lp.cols + lp.rows.size() + 1),
        data_((m_ + 1) * width_, 0.0), basis_(m_), active_(m_, true), cancel_(cancel) {
    for (std::size_t i = 0; i < m_; ++i) {
      // Flip rows with negative right-hand side so the artificial basis is feasible.
      const double sign = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * lp.rows[i][j];
      at(i, n_ + i) = 1.0;
      rhs(i) = sign * lp.rhs[i];
      basis_[i] = n_ + i;
    }
  }

  /// Minimises the sum of artificials; returns the residual infeasibility.
  double phase_one() {
    for (std::size_t j = 0; j < width_; ++j) cost(j) = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) cost(j) -= at(i, j);
      cost(width_ - 1) -= rhs(i);
    }
    iterate(n_ + m_);
    return -cost(width_ - 1);
  }

  /// Pivots remaining artificials out of the basis; rows that cannot be
  /// pivoted are linearly dependent and are retired.
  void drop_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::optional<std::size_t> enter;
      double best = kPivotTolerance;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(at(i, j)) > best) {
          best = std::abs(at(i, j));
          enter = j;
        }
      }
      if (enter) {
        pivot(i, *enter);
      } else {
        active_[i] = false;
      }
    }
  }

  void phase_two(const std::vector<double>& c) {
    for (std::size_t j = 0; j < width_; ++j) cost(j) = 0.0;
    for (std::size_t j = 0; j < n_; ++j) cost(j) = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) cost(j) -= cb * at(i, j);
    }
    iterate(n_);
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<bool>& active() const { return active_; }

private:
  double& at(std::size_t i, std::size_t j) { return data_[i * width_ + j]; }
  double& rhs(std::size_t i) { return at(i, width_ - 1); }
  double& cost(std::size_t j) { return data_[m_ * width_ + j]; }

  // Columns at or beyond `limit` never enter the basis.
  void iterate(std::size_t limit) {
    int degenerate_run = 0;
    for (;;) {
      if (cancel_ && cancel_()) throw Error(ErrorCode::Cancelled, "LP solve cancelled");
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      std::optional<std::size_t> enter;
      double most_negative = -kCostTolerance;
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost(j) < most_negative) {
          enter = j;
          if (bland) break;
          most_negative = cost(j);
        }
      }
      if (!enter) return;

      std::optional<std::size_t> leave;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i]) continue;
        const double a = at(i, *enter);
        if (a <= kPivotTolerance) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && leave && basis_[i] < basis_[*leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (!leave) throw Error(ErrorCode::InvalidArgument, "LP is unbounded");
      degenerate_run = best_ratio <= 1e-15 ? degenerate_run + 1 : 0;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    for (std::size_t j = 0; j < width_; ++j) at(row, j) /= p;
    at(row, col) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      double& factor_ref = data_[i * width_ + col];
      const double factor = factor_ref;
      if (factor == 0.0) continue;
      double* dst = &data_[i * width_];
      const double* src = &data_[row * width_];
      for (std::size_t j = 0; j < width_; ++j) dst[j] -= factor * src[j];
      factor_ref = 0.0;
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  const std::function<bool()>& cancel_;
};

// Recomputes the basic solution from the original data, which removes the
// drift accumulated by tableau updates.
std::vector<double> refine_basic_solution(const EqualityLp& lp, const std::vector<std::size_t>& basis,
                                          const std::vector<bool>& active) {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (active[i]) {
      rows.push_back(i);
      cols.push_back(basis[i]);
    }
  }
  const std::size_t k = rows.size();
  std::vector<double> m(k * (k + 1));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r * (k + 1) + c] = lp.rows[rows[r]][cols[c]];
    m[r * (k + 1) + k] = lp.rhs[rows[r]];
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(m[r * (k + 1) + c]) > std::abs(m[piv * (k + 1) + c])) piv = r;
    }
    if (std::abs(m[piv * (k + 1) + c]) < 1e-14) return {};
    if (piv != c) {
      for (std::size_t j = 0; j <= k; ++j) std::swap(m[piv * (k + 1) + j], m[c * (k + 1) + j]);
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = m[r * (k + 1) + c] / m[c * (k + 1) + c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j <= k; ++j) m[r * (k + 1) + j] -= f * m[c * (k + 1) + j];
    }
  }
  std::vector<double> x(lp.cols, 0.0);
  for (std::size_t c = 0; c < k; ++c) x[cols[c]] = m[c * (k + 1) + k] / m[c * (k + 1) + c];
  return x;
}

}  // namespace

LpSolution solve_lp(const EqualityLp& lp, const std::vector<double>& objective, bool maximize,
                    double feasibility_tolerance, const std::function<bool()>& cancel) {
  Tableau t(lp, cancel);
  if (t.phase_one() > feasibility_tolerance) return LpSolution{LpStatus::Infeasible, 0.0, {}};
  t.drop_artificials();

  std::vector<double> c(objective);
  if (maximize) {
    for (double& v : c) v = -v;
  }
  t.phase_two(c);

  LpSolution out;
  out.status = LpStatus::Optimal;
  out.x = refine_basic_solution(lp, t.basis(), t.active());
  if (out.x.empty()) {
    throw Error(ErrorCode::InvalidArgument, "optimal basis is numerically singular");
  }
  for (double& v : out.x) v = std::max(v, 0.0);
  for (std::size_t j = 0; j < lp.cols; ++j) out.value += objective[j] * out.x[j];
  return out;
}

}  // namespace markov_fuzzy::detail
