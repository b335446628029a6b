#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "wsp/error.hpp"
#include "wsp/instances.hpp"
#include "wsp/rng.hpp"

namespace wsp {

// Uniform random 3-SAT: every clause picks three distinct variables and
// independent signs. Deterministic in the seed.
inline CnfFormula random_3sat(int var_count, int clause_count, std::uint32_t seed) {
  if (var_count < 3) fail(Errc::validation, "random 3-SAT needs at least 3 variables");
  if (clause_count < 0) fail(Errc::validation, "negative clause count");

  std::mt19937 gen(seed);
  CnfFormula f;
  f.var_count = var_count;
  f.arity_cap = 3;
  f.clauses.reserve(static_cast<std::size_t>(clause_count));
  std::vector<int> vars(3);
  for (int c = 0; c < clause_count; ++c) {
    vars[0] = rng_range(gen, 1, var_count);
    do {
      vars[1] = rng_range(gen, 1, var_count);
    } while (vars[1] == vars[0]);
    do {
      vars[2] = rng_range(gen, 1, var_count);
    } while (vars[2] == vars[0] || vars[2] == vars[1]);
    std::sort(vars.begin(), vars.end());
    std::vector<int> clause(3);
    for (int i = 0; i < 3; ++i) clause[static_cast<std::size_t>(i)] = rng_chance(gen, 1, 2) ? vars[static_cast<std::size_t>(i)] : -vars[static_cast<std::size_t>(i)];
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace wsp
