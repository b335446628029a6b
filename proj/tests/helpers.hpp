#pragma once

// Seeded instance generators and slow independent oracles shared by the unit
// and acceptance suites. The oracles deliberately avoid the library's search
// machinery: plain odometers over the full space.

#include <random>
#include <string>
#include <vector>

#include "wsp/wsp.hpp"

namespace testgen {

using namespace wsp;

// Workflow over user-independent kinds only (the pattern solver's domain).
inline Workflow random_workflow(std::mt19937& gen, int max_steps = 6, int max_users = 4) {
  Workflow w;
  w.step_count = rng_range(gen, 1, max_steps);
  w.user_count = rng_range(gen, 1, max_users);
  w.auth.resize(static_cast<std::size_t>(w.step_count));
  for (auto& users : w.auth)
    for (int u = 1; u <= w.user_count; ++u)
      if (rng_chance(gen, 3, 4)) users.push_back(u);

  const int constraint_count = rng_range(gen, 0, 4);
  for (int i = 0; i < constraint_count; ++i) {
    const int kind = w.step_count >= 2 ? rng_range(gen, 0, 2) : 1;
    if (kind == 0) {
      int a = rng_range(gen, 1, w.step_count);
      int b = rng_range(gen, 1, w.step_count);
      while (b == a) b = rng_range(gen, 1, w.step_count);
      w.constraints.push_back(not_equals(a, b));
    } else if (kind == 1) {
      std::vector<StepId> scope;
      for (int s = 1; s <= w.step_count; ++s)
        if (rng_chance(gen, 1, 2)) scope.push_back(s);
      if (scope.empty()) scope.push_back(rng_range(gen, 1, w.step_count));
      const int lo = rng_range(gen, 1, static_cast<int>(scope.size()));
      const int hi = rng_range(gen, lo, static_cast<int>(scope.size()));
      w.constraints.push_back(counting(lo, hi, std::move(scope)));
    } else {
      std::vector<std::pair<StepId, StepId>> pairs;
      const int pair_count = rng_range(gen, 1, 2);
      for (int pc = 0; pc < pair_count; ++pc) {
        int a = rng_range(gen, 1, w.step_count);
        int b = rng_range(gen, 1, w.step_count);
        while (b == a) b = rng_range(gen, 1, w.step_count);
        pairs.emplace_back(a, b);
      }
      w.constraints.push_back(forbidden_agreement(std::move(pairs)));
    }
  }
  return w;
}

inline CnfFormula random_cnf(std::mt19937& gen, int max_vars = 10, int max_clauses = 25) {
  CnfFormula f;
  f.var_count = rng_range(gen, 1, max_vars);
  const int clause_count = rng_range(gen, 0, max_clauses);
  for (int c = 0; c < clause_count; ++c) {
    const int len = rng_range(gen, 1, std::min(3, f.var_count));
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < len) {
      const int v = rng_range(gen, 1, f.var_count);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<int> clause;
    for (int v : vars) clause.push_back(rng_chance(gen, 1, 2) ? v : -v);
    f.clauses.push_back(std::move(clause));
    f.arity_cap = std::max(f.arity_cap, len);
  }
  return f;
}

inline CspInstance random_csp(std::mt19937& gen, int max_vars = 5, int max_domain = 4) {
  CspInstance csp;
  csp.var_count = rng_range(gen, 1, max_vars);
  csp.domain_size = rng_range(gen, 1, max_domain);
  csp.arity_cap = 3;
  const int constraint_count = rng_range(gen, 0, 8);
  for (int c = 0; c < constraint_count; ++c) {
    const int arity = rng_range(gen, 1, std::min(3, csp.var_count));
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < arity) {
      const int v = rng_range(gen, 1, csp.var_count);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<std::pair<int, int>> terms;
    for (int v : vars) terms.emplace_back(v, rng_range(gen, 1, csp.domain_size));
    csp.constraints.push_back(csp_constraint(std::move(terms)));
  }
  return csp;
}

inline SetSplittingInstance random_setsplit(std::mt19937& gen, int max_elems = 10,
                                            int min_subset = 2) {
  SetSplittingInstance inst;
  const int size = rng_range(gen, std::max(2, min_subset), max_elems);
  for (int e = 0; e < size; ++e) inst.element_names.push_back(std::string(1, static_cast<char>('a' + e)));
  const int subsets = rng_range(gen, 1, 6);
  for (int i = 0; i < subsets; ++i) {
    std::vector<int> subset;
    for (int e = 1; e <= size; ++e)
      if (rng_chance(gen, 1, 2)) subset.push_back(e);
    while (static_cast<int>(subset.size()) < min_subset) {
      const int e = rng_range(gen, 1, size);
      if (std::find(subset.begin(), subset.end(), e) == subset.end()) subset.push_back(e);
    }
    std::sort(subset.begin(), subset.end());
    inst.family.push_back(std::move(subset));
  }
  return inst;
}

// 2^n truth-table satisfiability.
inline bool truth_table_satisfiable(const CnfFormula& f) {
  const int n = f.var_count;
  for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
    std::vector<bool> model(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) model[static_cast<std::size_t>(i)] = (bits >> i) & 1;
    if (satisfies(f, model)) return true;
  }
  return f.clauses.empty() && n == 0;
}

// 2^|S| split check.
inline bool brute_force_splittable(const SetSplittingInstance& inst) {
  const int n = static_cast<int>(inst.element_names.size());
  for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
    std::vector<int> coloring(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) coloring[static_cast<std::size_t>(i)] = ((bits >> i) & 1) ? 1 : 2;
    if (splits(inst, coloring)) return true;
  }
  return false;
}

// Plain odometer over every plan, no pruning: the reference for the solvers.
inline bool exhaustive_wsp_satisfiable(const Workflow& w) {
  if (w.step_count == 0) {
    const auto check = check_plan(w, Plan{});
    return check.authorized && check.eligible;
  }
  if (w.user_count == 0) return false;
  Plan plan{std::vector<UserId>(static_cast<std::size_t>(w.step_count), 1)};
  for (;;) {
    const auto check = check_plan(w, plan);
    if (check.authorized && check.eligible) return true;
    int i = w.step_count - 1;
    while (i >= 0 && plan.assignment[static_cast<std::size_t>(i)] == w.user_count) {
      plan.assignment[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) return false;
    ++plan.assignment[static_cast<std::size_t>(i)];
  }
}

}  // namespace testgen
