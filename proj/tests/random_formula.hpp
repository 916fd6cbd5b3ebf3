#pragma once

#include <random>
#include <string>
#include <vector>

#include "markov_fuzzy/formula.hpp"

namespace testgen {

// Random quantifier-free formula over `names` with depth at most `depth`.
inline markov_fuzzy::Formula random_formula(std::mt19937_64& rng,
                                            const std::vector<std::string>& names, int depth) {
  using markov_fuzzy::Formula;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 4);
  switch (pick(rng)) {
    case 0:
      return Formula::atom(names[rng() % names.size()]);
    case 1:
      return Formula::negate(random_formula(rng, names, depth - 1));
    case 2:
      return Formula::conj(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1));
    case 3:
      return Formula::disj(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1));
    default:
      return Formula::implies(random_formula(rng, names, depth - 1),
                              random_formula(rng, names, depth - 1));
  }
}

inline std::vector<std::string> variable_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("P" + std::to_string(i));
  return v;
}

}  // namespace testgen
