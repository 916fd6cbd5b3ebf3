#pragma once

// Reference computations used as test oracles. They are written directly
// from the definitions and share no code with the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline bool bit(std::uint32_t a, std::size_t i) { return (a >> i) & 1u; }

// Law of table(A) for A ~ probs, by direct accumulation per output value.
inline std::vector<double> pushforward(const std::vector<double>& probs,
                                       const std::vector<std::uint32_t>& table,
                                       std::size_t arity_out) {
  std::vector<double> out(std::size_t{1} << arity_out, 0.0);
  for (std::uint32_t y = 0; y < out.size(); ++y) {
    for (std::size_t a = 0; a < probs.size(); ++a) {
      if (table[a] == y) out[y] += probs[a];
    }
  }
  return out;
}

// Joint of n independent coins by expanding the product per assignment.
inline std::vector<double> independent(const std::vector<double>& p) {
  std::vector<double> out(std::size_t{1} << p.size());
  for (std::uint32_t a = 0; a < out.size(); ++a) {
    double v = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) v *= bit(a, i) ? p[i] : 1.0 - p[i];
    out[a] = v;
  }
  return out;
}

inline double prob_true(const std::vector<double>& probs, std::size_t coord) {
  double s = 0.0;
  for (std::uint32_t a = 0; a < probs.size(); ++a) {
    if (bit(a, coord)) s += probs[a];
  }
  return s;
}

inline double prob_both_false(const std::vector<double>& probs, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::uint32_t a = 0; a < probs.size(); ++a) {
    if (!bit(a, i) && !bit(a, j)) s += probs[a];
  }
  return s;
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t size) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(size);
  double total = 0.0;
  for (auto& x : v) total += (x = e(rng));
  for (auto& x : v) x /= total;
  return v;
}

inline std::vector<std::uint32_t> random_table(std::mt19937_64& rng, std::size_t arity_in,
                                               std::size_t arity_out) {
  std::uniform_int_distribution<std::uint32_t> d(0, (1u << arity_out) - 1);
  std::vector<std::uint32_t> t(std::size_t{1} << arity_in);
  for (auto& x : t) x = d(rng);
  return t;
}

// 2x2 tables with marginals (p1, p2) on a grid of q = P(both false): the
// feasible q are exactly those making every entry nonnegative.
struct QScan {
  double q_min;
  double q_max;
};

inline QScan scan_q(double p1, double p2, double step) {
  QScan r{2.0, -1.0};
  const auto n = static_cast<long>(1.0 / step + 0.5);
  for (long k = 0; k <= n; ++k) {
    const double q = static_cast<double>(k) * step;
    const double tf = (1.0 - p2) - q;
    const double ft = (1.0 - p1) - q;
    const double tt = p1 + p2 - 1.0 + q;
    if (tf >= -1e-12 && ft >= -1e-12 && tt >= -1e-12) {
      r.q_min = std::min(r.q_min, q);
      r.q_max = std::max(r.q_max, q);
    }
  }
  return r;
}

}  // namespace oracle
