#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wsp/instances.hpp"
#include "wsp/matching.hpp"
#include "wsp/model.hpp"
#include "wsp/partitions.hpp"

namespace wsp {

struct SolveConfig {
  std::uint64_t max_brute_plans = 100'000'000;     // cap on n^k
  std::uint64_t max_pattern_nodes = 50'000'000;    // search-node budget
  std::uint64_t max_csp_assignments = 100'000'000; // cap on d^k
  int max_pattern_steps = 25;                      // pattern accounting limit
};

enum class SolveStatus { satisfiable, unsatisfiable };

inline const char* to_string(SolveStatus s) {
  return s == SolveStatus::satisfiable ? "SAT" : "UNSAT";
}

struct SolveStats {
  std::uint64_t plans_enumerated = 0;
  std::uint64_t patterns_enumerated = 0;
  std::uint64_t matchings_attempted = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::unsatisfiable;
  std::optional<Plan> witness;
  SolveStats stats;
};

namespace detail {

// n^k, saturated at cap+1 so callers can compare against the cap.
inline std::uint64_t pow_saturated(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
    if (base == 0) break;
  }
  return result;
}

// Constraints indexed by the depth at which a depth-first search over steps
// 1..k fully determines them, plus the counting constraints that can already
// reject a partial plan at each depth (the per-user count only grows).
struct ConstraintSchedule {
  std::vector<std::vector<int>> decided_at;  // [depth 0..k]: scope complete exactly here
  std::vector<std::vector<int>> counting_at; // [depth]: counting with this step, scope open
};

inline ConstraintSchedule make_schedule(const Workflow& w) {
  ConstraintSchedule sched;
  sched.decided_at.assign(static_cast<std::size_t>(w.step_count) + 1, {});
  sched.counting_at.assign(static_cast<std::size_t>(w.step_count) + 1, {});
  for (std::size_t idx = 0; idx < w.constraints.size(); ++idx) {
    const auto scope = scope_of(w.constraints[idx]);
    const int last = scope.empty() ? 0 : scope.back();
    sched.decided_at[static_cast<std::size_t>(last)].push_back(static_cast<int>(idx));
    if (const auto* c = std::get_if<Counting>(&w.constraints[idx])) {
      for (StepId s : c->scope)
        if (s < last) sched.counting_at[static_cast<std::size_t>(s)].push_back(static_cast<int>(idx));
    }
  }
  return sched;
}

// True when the user just placed on step `depth` already performs more than
// max_per_user steps of the constraint's scope.
inline bool counting_overfull(const Counting& c, const Plan& plan, int depth) {
  const UserId placed = plan.assignment[static_cast<std::size_t>(depth) - 1];
  int performed = 0;
  for (StepId s : c.scope) {
    if (s > depth) break;  // scope is sorted; later steps are unassigned
    if (plan.assignment[static_cast<std::size_t>(s) - 1] == placed) ++performed;
  }
  return performed > c.max_per_user;
}

inline bool constraints_pass(const Workflow& w, const std::vector<int>& indices,
                             const Plan& plan) {
  for (int idx : indices)
    if (!eval_constraint(w.constraints[static_cast<std::size_t>(idx)], plan)) return false;
  return true;
}

inline void verify_witness(const Workflow& w, const Plan& plan) {
  const auto check = check_plan(w, plan);
  if (!check.authorized || !check.eligible)
    throw std::logic_error("solver produced an invalid witness");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Brute-force WSP search: depth-first over steps in order, users in ascending
// order, so the first witness found is the lexicographically first authorized
// eligible plan. Branches die as soon as a fully-assigned constraint fails or
// a counting constraint is already over its upper bound.
// ---------------------------------------------------------------------------
inline SolveResult solve_wsp_brute(const Workflow& w, const SolveConfig& cfg = {}) {
  validate_workflow(w);
  const int k = w.step_count;
  const std::uint64_t space =
      detail::pow_saturated(static_cast<std::uint64_t>(w.user_count), k, cfg.max_brute_plans);
  if (space > cfg.max_brute_plans)
    fail(Errc::budget_exceeded, "plan space n^k exceeds the configured budget");

  SolveResult result;
  const auto sched = detail::make_schedule(w);
  Plan plan{std::vector<UserId>(static_cast<std::size_t>(k), 0)};
  if (!detail::constraints_pass(w, sched.decided_at[0], plan)) return result;

  struct Search {
    const Workflow& w;
    const detail::ConstraintSchedule& sched;
    Plan& plan;
    SolveResult& result;

    bool run(int depth) {  // depth = next step index, 0-based
      if (depth == w.step_count) {
        ++result.stats.plans_enumerated;
        return true;
      }
      const int step = depth + 1;
      for (UserId u : w.auth[static_cast<std::size_t>(depth)]) {
        plan.assignment[static_cast<std::size_t>(depth)] = u;
        bool viable = detail::constraints_pass(w, sched.decided_at[static_cast<std::size_t>(step)], plan);
        if (viable) {
          for (int idx : sched.counting_at[static_cast<std::size_t>(step)]) {
            if (detail::counting_overfull(std::get<Counting>(w.constraints[static_cast<std::size_t>(idx)]),
                                          plan, step)) {
              viable = false;
              break;
            }
          }
        }
        if (viable && run(depth + 1)) return true;
      }
      plan.assignment[static_cast<std::size_t>(depth)] = 0;
      return false;
    }
  } search{w, sched, plan, result};

  if (search.run(0)) {
    detail::verify_witness(w, plan);
    result.status = SolveStatus::satisfiable;
    result.witness = plan;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Pattern-based WSP search for user-independent constraints. The search space
// is the set partitions of the steps in lexicographic restricted-growth
// order; a pattern is eligible iff every constraint holds under the canonical
// plan (step i -> synthetic user rgs[i]), which for user-independent kinds
// depends only on which steps share a user. Eligible patterns are realized
// through a saturating block->user matching against the authorization lists.
//
// The enumeration runs as a depth-first search over rgs prefixes and skips a
// subtree once no completion can succeed (a decided constraint failed, a
// counting bound is already exceeded, or the partial blocks have no
// saturating matching, which later assignments cannot repair since block
// authorization sets only shrink). Skipped subtrees are added to
// stats.patterns_enumerated via completion counts, so an exhausted search
// reports exactly Bell(k) patterns and the witness, when one exists, is the
// same one plain enumeration would return.
// ---------------------------------------------------------------------------
inline SolveResult solve_wsp_pattern(const Workflow& w, const SolveConfig& cfg = {}) {
  validate_workflow(w);
  for (const auto& c : w.constraints)
    if (std::holds_alternative<ExplicitTable>(c))
      fail(Errc::non_user_independent_constraint,
           "pattern solver requires user-independent constraint kinds");
  const int k = w.step_count;
  if (k > cfg.max_pattern_steps)
    fail(Errc::budget_exceeded, "pattern solver supports at most " +
                                    std::to_string(cfg.max_pattern_steps) + " steps");

  SolveResult result;
  const auto sched = detail::make_schedule(w);
  Plan canonical{std::vector<UserId>(static_cast<std::size_t>(k), 0)};
  if (!detail::constraints_pass(w, sched.decided_at[0], canonical)) {
    result.stats.patterns_enumerated = k == 0 ? 1 : 0;
    return result;
  }
  if (k == 0) {
    result.status = SolveStatus::satisfiable;
    result.witness = Plan{};
    result.stats.patterns_enumerated = 1;
    return result;
  }

  const auto completions = rgs_completion_counts(k);

  struct Search {
    const Workflow& w;
    const SolveConfig& cfg;
    const detail::ConstraintSchedule& sched;
    const std::vector<std::vector<std::uint64_t>>& completions;
    Plan& canonical;
    SolveResult& result;
    std::vector<int> rgs;
    std::vector<std::vector<UserId>> block_auth;
    std::uint64_t nodes = 0;
    std::optional<std::vector<UserId>> block_users;

    bool run(int depth, int max_block) {
      const int step = depth + 1;
      for (int b = 1; b <= max_block + 1; ++b) {
        if (++nodes > cfg.max_pattern_nodes)
          fail(Errc::budget_exceeded, "pattern search exceeded the node budget");
        rgs[static_cast<std::size_t>(depth)] = b;
        canonical.assignment[static_cast<std::size_t>(depth)] = b;
        const int new_max = std::max(max_block, b);
        const std::uint64_t subtree = completions[static_cast<std::size_t>(step)][static_cast<std::size_t>(new_max)];

        bool viable = detail::constraints_pass(w, sched.decided_at[static_cast<std::size_t>(step)], canonical);
        if (viable) {
          for (int idx : sched.counting_at[static_cast<std::size_t>(step)]) {
            if (detail::counting_overfull(std::get<Counting>(w.constraints[static_cast<std::size_t>(idx)]),
                                          canonical, step)) {
              viable = false;
              break;
            }
          }
        }
        if (viable && new_max > w.user_count) viable = false;  // more blocks than users

        std::vector<UserId> saved;
        bool pushed_block = false;
        bool shrank_block = false;
        if (viable) {
          const auto& step_auth = w.auth[static_cast<std::size_t>(depth)];
          if (b > max_block) {
            block_auth.push_back(step_auth);
            pushed_block = true;
          } else {
            saved = block_auth[static_cast<std::size_t>(b) - 1];
            shrank_block = true;
            std::vector<UserId> merged;
            std::set_intersection(saved.begin(), saved.end(), step_auth.begin(), step_auth.end(),
                                  std::back_inserter(merged));
            block_auth[static_cast<std::size_t>(b) - 1] = std::move(merged);
          }
          ++result.stats.matchings_attempted;
          block_users = saturating_matching(block_auth, w.user_count);
          if (!block_users) viable = false;
        }

        if (viable) {
          if (step == w.step_count) {
            result.stats.patterns_enumerated += 1;
            return true;  // eligible and matchable: first witness in order
          }
          if (run(depth + 1, new_max)) return true;
        } else {
          result.stats.patterns_enumerated += subtree;
        }

        if (pushed_block) {
          block_auth.pop_back();
        } else if (shrank_block) {
          block_auth[static_cast<std::size_t>(b) - 1] = std::move(saved);
        }
      }
      canonical.assignment[static_cast<std::size_t>(depth)] = 0;
      return false;
    }
  } search{w, cfg, sched, completions, canonical, result, std::vector<int>(static_cast<std::size_t>(k), 0), {}, 0, std::nullopt};

  if (search.run(0, 0)) {
    Plan witness{std::vector<UserId>(static_cast<std::size_t>(k), 0)};
    for (int i = 0; i < k; ++i)
      witness.assignment[static_cast<std::size_t>(i)] =
          (*search.block_users)[static_cast<std::size_t>(search.rgs[static_cast<std::size_t>(i)]) - 1];
    detail::verify_witness(w, witness);
    result.status = SolveStatus::satisfiable;
    result.witness = std::move(witness);
  }
  return result;
}

// ---------------------------------------------------------------------------
// CSP brute-force search: first satisfying assignment in lexicographic order.
// ---------------------------------------------------------------------------
inline std::optional<std::vector<int>> solve_csp_brute(const CspInstance& csp,
                                                       const SolveConfig& cfg = {}) {
  validate_csp(csp);
  const std::uint64_t space = detail::pow_saturated(
      static_cast<std::uint64_t>(csp.domain_size), csp.var_count, cfg.max_csp_assignments);
  if (space > cfg.max_csp_assignments)
    fail(Errc::budget_exceeded, "assignment space d^k exceeds the configured budget");

  // constraints decided once their largest variable is assigned
  std::vector<std::vector<int>> decided_at(static_cast<std::size_t>(csp.var_count) + 1);
  for (std::size_t idx = 0; idx < csp.constraints.size(); ++idx)
    decided_at[static_cast<std::size_t>(csp.constraints[idx].terms.back().first)].push_back(
        static_cast<int>(idx));

  std::vector<int> assignment(static_cast<std::size_t>(csp.var_count), 0);
  struct Search {
    const CspInstance& csp;
    const std::vector<std::vector<int>>& decided_at;
    std::vector<int>& assignment;

    bool run(int depth) {
      if (depth == csp.var_count) return true;
      for (int value = 1; value <= csp.domain_size; ++value) {
        assignment[static_cast<std::size_t>(depth)] = value;
        bool viable = true;
        for (int idx : decided_at[static_cast<std::size_t>(depth) + 1]) {
          if (violates(csp.constraints[static_cast<std::size_t>(idx)], assignment)) {
            viable = false;
            break;
          }
        }
        if (viable && run(depth + 1)) return true;
      }
      assignment[static_cast<std::size_t>(depth)] = 0;
      return false;
    }
  } search{csp, decided_at, assignment};

  if (!search.run(0)) return std::nullopt;
  return assignment;
}

// ---------------------------------------------------------------------------
// DPLL: unit propagation plus branching on the first unassigned variable,
// false before true. Used as the cross-verification oracle for the reduction
// chain, so it stays deliberately simple.
// ---------------------------------------------------------------------------
inline std::optional<std::vector<bool>> solve_sat_dpll(const CnfFormula& f) {
  validate_cnf(f);

  struct Search {
    const CnfFormula& f;

    // assignment entries: -1 unassigned, 0 false, 1 true
    std::optional<std::vector<bool>> run(std::vector<signed char> assignment) {
      for (bool changed = true; changed;) {
        changed = false;
        for (const auto& clause : f.clauses) {
          int unassigned = 0;
          int last_free = 0;
          bool satisfied = false;
          for (int lit : clause) {
            const signed char value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
            if (value < 0) {
              ++unassigned;
              last_free = lit;
            } else if ((lit > 0) == (value == 1)) {
              satisfied = true;
              break;
            }
          }
          if (satisfied) continue;
          if (unassigned == 0) return std::nullopt;  // conflict
          if (unassigned == 1) {
            assignment[static_cast<std::size_t>(std::abs(last_free)) - 1] = last_free > 0 ? 1 : 0;
            changed = true;
          }
        }
      }

      int branch_var = 0;
      for (const auto& clause : f.clauses) {
        bool satisfied = false;
        int free_var = 0;
        for (int lit : clause) {
          const signed char value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
          if (value < 0) {
            if (free_var == 0) free_var = std::abs(lit);
          } else if ((lit > 0) == (value == 1)) {
            satisfied = true;
            break;
          }
        }
        if (!satisfied && branch_var == 0) branch_var = free_var;
      }
      if (branch_var == 0) {  // every clause satisfied
        std::vector<bool> model(assignment.size(), false);
        for (std::size_t i = 0; i < assignment.size(); ++i) model[i] = assignment[i] == 1;
        return model;
      }
      for (signed char value : {static_cast<signed char>(0), static_cast<signed char>(1)}) {
        auto branched = assignment;
        branched[static_cast<std::size_t>(branch_var) - 1] = value;
        if (auto model = run(std::move(branched))) return model;
      }
      return std::nullopt;
    }
  } search{f};

  return search.run(std::vector<signed char>(static_cast<std::size_t>(f.var_count), -1));
}

}  // namespace wsp
