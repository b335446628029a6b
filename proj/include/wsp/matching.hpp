#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "wsp/model.hpp"
#include "wsp/partitions.hpp"

namespace wsp {

// Kuhn's augmenting-path matching. Left vertices are blocks, right vertices
// are users 1..user_count, block_candidates[b] lists the users block b may
// take. Returns an injective block -> user map saturating every block, or
// nullopt when none exists.
inline std::optional<std::vector<UserId>> saturating_matching(
    const std::vector<std::vector<UserId>>& block_candidates, int user_count) {
  const int blocks = static_cast<int>(block_candidates.size());
  std::vector<int> owner(static_cast<std::size_t>(user_count) + 1, -1);  // user -> block
  std::vector<char> visited(static_cast<std::size_t>(user_count) + 1, 0);

  struct Augmenter {
    const std::vector<std::vector<UserId>>& cand;
    std::vector<int>& owner;
    std::vector<char>& visited;

    bool operator()(int block) {
      for (UserId u : cand[static_cast<std::size_t>(block)]) {
        if (visited[static_cast<std::size_t>(u)]) continue;
        visited[static_cast<std::size_t>(u)] = 1;
        if (owner[static_cast<std::size_t>(u)] < 0 || (*this)(owner[static_cast<std::size_t>(u)])) {
          owner[static_cast<std::size_t>(u)] = block;
          return true;
        }
      }
      return false;
    }
  } augment{block_candidates, owner, visited};

  for (int b = 0; b < blocks; ++b) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(b)) return std::nullopt;
  }
  std::vector<UserId> matched(static_cast<std::size_t>(blocks), 0);
  for (UserId u = 1; u <= user_count; ++u)
    if (owner[static_cast<std::size_t>(u)] >= 0)
      matched[static_cast<std::size_t>(owner[static_cast<std::size_t>(u)])] = u;
  return matched;
}

// Users authorized for every step of each block of `pattern`.
inline std::vector<std::vector<UserId>> block_authorizations(const Pattern& pattern,
                                                             const Workflow& w) {
  std::vector<std::vector<UserId>> cand(static_cast<std::size_t>(pattern.block_count()));
  std::vector<char> seen(cand.size(), 0);
  for (std::size_t i = 0; i < pattern.rgs.size(); ++i) {
    const std::size_t b = static_cast<std::size_t>(pattern.rgs[i]) - 1;
    const auto& step_auth = w.auth[i];
    if (!seen[b]) {
      cand[b] = step_auth;
      seen[b] = 1;
    } else {
      std::vector<UserId> merged;
      std::set_intersection(cand[b].begin(), cand[b].end(), step_auth.begin(), step_auth.end(),
                            std::back_inserter(merged));
      cand[b] = std::move(merged);
    }
  }
  return cand;
}

// Injective block -> user assignment where every user is authorized for all
// steps of its block; nullopt when no saturating matching exists.
inline std::optional<std::vector<UserId>> match_pattern(const Pattern& pattern,
                                                        const Workflow& w) {
  if (pattern.rgs.size() != static_cast<std::size_t>(w.step_count))
    fail(Errc::validation, "pattern length differs from the workflow's step count");
  if (!is_valid_rgs(pattern.rgs))
    fail(Errc::validation, "pattern is not a restricted-growth string");
  return saturating_matching(block_authorizations(pattern, w), w.user_count);
}

}  // namespace wsp
