#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wsp/error.hpp"

namespace wsp {

// Steps and users are dense 1-based integers; 0 marks an unassigned step.
using StepId = int;
using UserId = int;

// ---------------------------------------------------------------------------
// Constraint kinds
// ---------------------------------------------------------------------------

// The two steps must be assigned to different users.
struct NotEquals {
  StepId a = 0;
  StepId b = 0;

  bool operator==(const NotEquals&) const = default;
};

// Every user who performs at least one step of `scope` must perform between
// min_per_user and max_per_user of them.
struct Counting {
  int min_per_user = 1;
  int max_per_user = 1;
  std::vector<StepId> scope;  // sorted, no duplicates

  bool operator==(const Counting&) const = default;
};

// Violated exactly when every listed pair of steps is assigned to one user.
struct ForbiddenAgreement {
  std::vector<std::pair<StepId, StepId>> pairs;  // nonempty; distinct steps per pair

  bool operator==(const ForbiddenAgreement&) const = default;
};

// Explicit list of forbidden scope assignments; rows[i][j] is the user of
// scope[j]. This kind can express arbitrary (not user-independent) behaviour,
// which is what the recognizers are tested against; the pattern solver
// refuses it.
struct ExplicitTable {
  std::vector<StepId> scope;              // sorted, no duplicates
  std::vector<std::vector<UserId>> rows;  // sorted, no duplicates

  bool operator==(const ExplicitTable&) const = default;
};

using Constraint = std::variant<NotEquals, Counting, ForbiddenAgreement, ExplicitTable>;

inline std::vector<StepId> scope_of(const Constraint& c) {
  std::vector<StepId> scope;
  std::visit(
      [&](const auto& kind) {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, NotEquals>) {
          scope = {kind.a, kind.b};
        } else if constexpr (std::is_same_v<T, Counting>) {
          scope = kind.scope;
        } else if constexpr (std::is_same_v<T, ForbiddenAgreement>) {
          for (const auto& [a, b] : kind.pairs) {
            scope.push_back(a);
            scope.push_back(b);
          }
        } else {
          scope = kind.scope;
        }
      },
      c);
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  return scope;
}

// ---------------------------------------------------------------------------
// Canonicalizing constructors. These enforce the workflow-independent
// invariants of each kind and bring the representation to a canonical form
// (sorted scopes, sorted pair lists, sorted unique table rows).
// ---------------------------------------------------------------------------

inline Constraint not_equals(StepId a, StepId b) {
  if (a == b) fail(Errc::validation, "not-equals constraint needs two distinct steps");
  if (a > b) std::swap(a, b);
  return NotEquals{a, b};
}

inline Constraint counting(int min_per_user, int max_per_user, std::vector<StepId> scope) {
  std::sort(scope.begin(), scope.end());
  if (std::adjacent_find(scope.begin(), scope.end()) != scope.end())
    fail(Errc::validation, "counting scope contains a duplicate step");
  if (scope.empty()) fail(Errc::validation, "counting scope must be nonempty");
  if (!(1 <= min_per_user && min_per_user <= max_per_user &&
        max_per_user <= static_cast<int>(scope.size())))
    fail(Errc::validation, "counting bounds must satisfy 1 <= lo <= hi <= |scope|");
  return Counting{min_per_user, max_per_user, std::move(scope)};
}

inline Constraint forbidden_agreement(std::vector<std::pair<StepId, StepId>> pairs) {
  if (pairs.empty()) fail(Errc::validation, "forbidden-agreement needs at least one pair");
  for (auto& [a, b] : pairs) {
    if (a == b) fail(Errc::validation, "forbidden-agreement pair must use distinct steps");
    if (a > b) std::swap(a, b);  // agreement is symmetric
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return ForbiddenAgreement{std::move(pairs)};
}

inline Constraint explicit_table(std::vector<StepId> scope,
                                 std::vector<std::vector<UserId>> rows) {
  std::vector<std::size_t> order(scope.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return scope[i] < scope[j]; });

  std::vector<StepId> sorted_scope(scope.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted_scope[i] = scope[order[i]];
  if (std::adjacent_find(sorted_scope.begin(), sorted_scope.end()) != sorted_scope.end())
    fail(Errc::validation, "table scope contains a duplicate step");
  if (sorted_scope.empty() && !rows.empty())
    fail(Errc::validation, "empty-scope table must forbid nothing");

  for (auto& row : rows) {
    if (row.size() != scope.size())
      fail(Errc::validation, "table row does not cover the scope exactly");
    std::vector<UserId> permuted(row.size());
    for (std::size_t i = 0; i < order.size(); ++i) permuted[i] = row[order[i]];
    row = std::move(permuted);
  }
  std::sort(rows.begin(), rows.end());
  if (std::adjacent_find(rows.begin(), rows.end()) != rows.end())
    fail(Errc::validation, "table contains a duplicate forbidden row");
  return ExplicitTable{std::move(sorted_scope), std::move(rows)};
}

// ---------------------------------------------------------------------------
// Workflow and plans
// ---------------------------------------------------------------------------

struct Workflow {
  int step_count = 0;
  int user_count = 0;
  std::vector<std::vector<UserId>> auth;  // auth[s-1]: sorted users; may be empty
  std::vector<Constraint> constraints;

  bool operator==(const Workflow&) const = default;
};

// assignment[s-1] is the user of step s; 0 means unassigned. A plan for a
// workflow must be total over its steps (checked by check_plan).
struct Plan {
  std::vector<UserId> assignment;

  bool operator==(const Plan&) const = default;
};

inline void validate_workflow(const Workflow& w) {
  if (w.step_count < 0 || w.user_count < 0)
    fail(Errc::validation, "negative step or user count");
  if (w.auth.size() != static_cast<std::size_t>(w.step_count))
    fail(Errc::validation, "authorization table size differs from step count");
  for (const auto& users : w.auth) {
    if (!std::is_sorted(users.begin(), users.end()) ||
        std::adjacent_find(users.begin(), users.end()) != users.end())
      fail(Errc::validation, "authorization list must be sorted and duplicate-free");
    for (UserId u : users)
      if (u < 1 || u > w.user_count)
        fail(Errc::validation, "authorization-outside-users: user " + std::to_string(u));
  }
  for (const auto& c : w.constraints) {
    for (StepId s : scope_of(c))
      if (s < 1 || s > w.step_count)
        fail(Errc::validation, "scope-outside-steps: step " + std::to_string(s));
    if (const auto* table = std::get_if<ExplicitTable>(&c)) {
      for (const auto& row : table->rows)
        for (UserId u : row)
          if (u < 1 || u > w.user_count)
            fail(Errc::validation, "table row references unknown user " + std::to_string(u));
    }
  }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace detail {

inline UserId plan_user(const Plan& plan, StepId s) {
  if (s < 1 || static_cast<std::size_t>(s) > plan.assignment.size() ||
      plan.assignment[s - 1] == 0)
    fail(Errc::scope_not_covered, "plan leaves scope step " + std::to_string(s) + " unassigned");
  return plan.assignment[s - 1];
}

}  // namespace detail

// True iff the restriction of `plan` to the constraint's scope satisfies it.
// The plan must cover the scope; users outside any particular workflow are
// fine (the solvers evaluate constraints on synthetic users).
inline bool eval_constraint(const Constraint& c, const Plan& plan) {
  return std::visit(
      [&](const auto& kind) -> bool {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, NotEquals>) {
          return detail::plan_user(plan, kind.a) != detail::plan_user(plan, kind.b);
        } else if constexpr (std::is_same_v<T, Counting>) {
          std::vector<UserId> used;
          used.reserve(kind.scope.size());
          for (StepId s : kind.scope) used.push_back(detail::plan_user(plan, s));
          std::sort(used.begin(), used.end());
          for (std::size_t i = 0; i < used.size();) {
            std::size_t j = i;
            while (j < used.size() && used[j] == used[i]) ++j;
            const int performed = static_cast<int>(j - i);
            if (performed < kind.min_per_user || performed > kind.max_per_user) return false;
            i = j;
          }
          return true;
        } else if constexpr (std::is_same_v<T, ForbiddenAgreement>) {
          for (const auto& [a, b] : kind.pairs)
            if (detail::plan_user(plan, a) != detail::plan_user(plan, b)) return true;
          return false;  // every pair agreed
        } else {
          std::vector<UserId> restriction;
          restriction.reserve(kind.scope.size());
          for (StepId s : kind.scope) restriction.push_back(detail::plan_user(plan, s));
          return !std::binary_search(kind.rows.begin(), kind.rows.end(), restriction);
        }
      },
      c);
}

struct PlanCheck {
  bool authorized = false;
  bool eligible = false;
};

inline PlanCheck check_plan(const Workflow& w, const Plan& plan) {
  if (plan.assignment.size() != static_cast<std::size_t>(w.step_count))
    fail(Errc::validation, "plan domain differs from the workflow's steps");
  for (UserId u : plan.assignment)
    if (u < 1 || u > w.user_count)
      fail(Errc::validation, "plan assigns a user outside the workflow's user set");

  PlanCheck result{true, true};
  for (int s = 1; s <= w.step_count; ++s) {
    const auto& allowed = w.auth[s - 1];
    if (!std::binary_search(allowed.begin(), allowed.end(), plan.assignment[s - 1])) {
      result.authorized = false;
      break;
    }
  }
  for (const auto& c : w.constraints) {
    if (!eval_constraint(c, plan)) {
      result.eligible = false;
      break;
    }
  }
  return result;
}

}  // namespace wsp
