#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "wsp/model.hpp"
#include "wsp/partitions.hpp"

namespace wsp {

namespace detail {

inline std::vector<UserId> sorted_distinct_users(const std::vector<UserId>& users) {
  std::vector<UserId> sorted = users;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(Errc::validation, "user set contains a duplicate");
  for (UserId u : sorted)
    if (u < 1) fail(Errc::validation, "user identifiers must be positive");
  return sorted;
}

// Evaluates `c` on the scope assignment described by user indices into
// `users`, materialized as a plan over the scope steps.
struct ScopeEvaluator {
  const Constraint& c;
  std::vector<StepId> scope;
  Plan plan;

  ScopeEvaluator(const Constraint& constraint, int max_step)
      : c(constraint), scope(scope_of(constraint)) {
    plan.assignment.assign(static_cast<std::size_t>(max_step), 0);
  }

  bool eval(const std::vector<UserId>& users, const std::vector<int>& user_index) {
    for (std::size_t i = 0; i < scope.size(); ++i)
      plan.assignment[static_cast<std::size_t>(scope[i]) - 1] =
          users[static_cast<std::size_t>(user_index[i])];
    return eval_constraint(c, plan);
  }
};

}  // namespace detail

// Brute-force test of permutation invariance: for every scope assignment and
// every permutation of the user set, relabeling the users must not change
// eligibility. Capped at |scope| <= 6 and |users| <= 5.
inline bool is_user_independent(const Constraint& c, const std::vector<UserId>& users) {
  const auto scope = scope_of(c);
  if (scope.size() > 6)
    fail(Errc::size_cap_exceeded, "user-independence check caps the scope at 6 steps");
  if (users.size() > 5)
    fail(Errc::size_cap_exceeded, "user-independence check caps the user set at 5");
  const auto base = detail::sorted_distinct_users(users);
  if (scope.empty() || base.empty()) return true;

  const int p = static_cast<int>(scope.size());
  const int u = static_cast<int>(base.size());
  detail::ScopeEvaluator evaluator(c, scope.back());

  // one evaluation per assignment, indexed by its mixed-radix code
  std::uint64_t total = 1;
  for (int i = 0; i < p; ++i) total *= static_cast<std::uint64_t>(u);
  std::vector<char> verdict(total);
  std::vector<int> user_index(static_cast<std::size_t>(p), 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int i = 0; i < p; ++i) {
      user_index[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(u));
      rest /= static_cast<std::uint64_t>(u);
    }
    verdict[code] = evaluator.eval(base, user_index) ? 1 : 0;
  }

  std::vector<int> perm(static_cast<std::size_t>(u));
  for (int i = 0; i < u; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code;
      std::uint64_t permuted = 0;
      std::uint64_t weight = 1;
      for (int i = 0; i < p; ++i) {
        const auto digit = static_cast<std::size_t>(rest % static_cast<std::uint64_t>(u));
        rest /= static_cast<std::uint64_t>(u);
        permuted += weight * static_cast<std::uint64_t>(perm[digit]);
        weight *= static_cast<std::uint64_t>(u);
      }
      if (verdict[code] != verdict[permuted]) return false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

// Brute-force test of regularity, evaluating this single constraint in
// isolation. A scope subset is realizable when some eligible plan over the
// whole scope has it as the exact preimage of one user; the constraint is
// regular when, for every partition of the scope into realizable blocks,
// assigning the blocks to distinct users (any injective choice) stays
// eligible. Capped at |scope| <= 5 and |users| <= 6, and the user set must
// offer at least |scope| distinct users.
inline bool is_regular(const Constraint& c, const std::vector<UserId>& users) {
  const auto scope = scope_of(c);
  if (scope.size() > 5)
    fail(Errc::size_cap_exceeded, "regularity check caps the scope at 5 steps");
  if (users.size() > 6)
    fail(Errc::size_cap_exceeded, "regularity check caps the user set at 6");
  const auto base = detail::sorted_distinct_users(users);
  if (scope.empty()) return true;
  if (base.size() < scope.size())
    fail(Errc::size_cap_exceeded, "regularity check needs at least |scope| distinct users");

  const int p = static_cast<int>(scope.size());
  const int u = static_cast<int>(base.size());
  detail::ScopeEvaluator evaluator(c, scope.back());

  // realizable[mask]: the scope subset `mask` is some user's exact preimage
  // in an eligible plan over the scope
  std::set<std::uint32_t> realizable;
  std::uint64_t total = 1;
  for (int i = 0; i < p; ++i) total *= static_cast<std::uint64_t>(u);
  std::vector<int> user_index(static_cast<std::size_t>(p), 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int i = 0; i < p; ++i) {
      user_index[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(u));
      rest /= static_cast<std::uint64_t>(u);
    }
    if (!evaluator.eval(base, user_index)) continue;
    for (int who = 0; who < u; ++who) {
      std::uint32_t mask = 0;
      for (int i = 0; i < p; ++i)
        if (user_index[static_cast<std::size_t>(i)] == who) mask |= 1u << i;
      if (mask != 0) realizable.insert(mask);
    }
  }

  Pattern partition;
  PatternEnumerator partitions(p);
  std::vector<int> chosen;  // user indices assigned to blocks, all distinct
  while (partitions.next(partition)) {
    const int blocks = partition.block_count();
    std::vector<std::uint32_t> block_masks(static_cast<std::size_t>(blocks), 0);
    for (int i = 0; i < p; ++i)
      block_masks[static_cast<std::size_t>(partition.rgs[static_cast<std::size_t>(i)]) - 1] |= 1u << i;
    const bool all_realizable =
        std::all_of(block_masks.begin(), block_masks.end(),
                    [&](std::uint32_t mask) { return realizable.contains(mask); });
    if (!all_realizable) continue;

    // every injective block -> user choice must stay eligible
    std::vector<char> used(static_cast<std::size_t>(u), 0);
    chosen.assign(static_cast<std::size_t>(blocks), -1);
    struct Choices {
      const Pattern& partition;
      detail::ScopeEvaluator& evaluator;
      const std::vector<UserId>& base;
      std::vector<char>& used;
      std::vector<int>& chosen;
      std::vector<int>& user_index;
      int p, u, blocks;

      bool all_eligible(int block) {
        if (block == blocks) {
          for (int i = 0; i < p; ++i)
            user_index[static_cast<std::size_t>(i)] =
                chosen[static_cast<std::size_t>(partition.rgs[static_cast<std::size_t>(i)]) - 1];
          return evaluator.eval(base, user_index);
        }
        for (int who = 0; who < u; ++who) {
          if (used[static_cast<std::size_t>(who)]) continue;
          used[static_cast<std::size_t>(who)] = 1;
          chosen[static_cast<std::size_t>(block)] = who;
          const bool ok = all_eligible(block + 1);
          used[static_cast<std::size_t>(who)] = 0;
          if (!ok) return false;
        }
        return true;
      }
    } choices{partition, evaluator, base, used, chosen, user_index, p, u, blocks};
    if (!choices.all_eligible(0)) return false;
  }
  return true;
}

}  // namespace wsp
