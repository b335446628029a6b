#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wsp/instances.hpp"
#include "wsp/model.hpp"

namespace wsp {

// ---------------------------------------------------------------------------
// Parameter selection
// ---------------------------------------------------------------------------

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Smallest power of two in [L, 2L] for L = n / (log2(n) * log2(log2(n))).
// The window always contains one; when both endpoints qualify the smaller is
// taken, keeping the instance small.
inline int choose_d(int n) {
  if (n < 4) fail(Errc::validation, "domain selection requires n >= 4");
  const double lg = std::log2(static_cast<double>(n));
  const double low = static_cast<double>(n) / (lg * std::log2(lg));
  std::uint64_t d = 1;
  while (static_cast<double>(d) < low) d <<= 1;
  return static_cast<int>(d);
}

struct ReductionParams {
  int var_count = 0;        // n, before padding
  int domain_size = 0;      // d, a power of two
  int bits_per_group = 0;   // ell = log2(d)
  int group_count = 0;      // k = ceil(n / ell)
  int padded_var_count = 0; // k * ell

  bool operator==(const ReductionParams&) const = default;
};

inline ReductionParams reduction_params(int var_count, int domain_size) {
  if (var_count < 0) fail(Errc::validation, "negative variable count");
  if (domain_size < 2 || !is_power_of_two(static_cast<std::uint64_t>(domain_size)))
    fail(Errc::validation, "domain size must be a power of two >= 2");
  int bits = 0;
  for (int v = domain_size; v > 1; v >>= 1) ++bits;
  const int groups = (var_count + bits - 1) / bits;
  return ReductionParams{var_count, domain_size, bits, groups, groups * bits};
}

// ---------------------------------------------------------------------------
// Variable grouping (r-SAT -> (d,r)-CSP)
// ---------------------------------------------------------------------------

// Group value encoding: group g holds variables (g-1)*ell+1 .. g*ell; a tuple
// of bits b_1..b_ell maps to the 1-based domain value 1 + sum b_j * 2^(j-1).
struct GroupingMap {
  ReductionParams params;

  int group_of(int var) const { return (var - 1) / params.bits_per_group + 1; }
  int bit_of(int var) const { return (var - 1) % params.bits_per_group + 1; }

  bool operator==(const GroupingMap&) const = default;
};

inline std::vector<bool> decode_group_value(int value, int bits) {
  if (bits < 1 || value < 1 || value > (1 << bits))
    fail(Errc::value_out_of_range, "group value " + std::to_string(value) + " outside the domain");
  std::vector<bool> out(static_cast<std::size_t>(bits));
  for (int j = 0; j < bits; ++j) out[static_cast<std::size_t>(j)] = ((value - 1) >> j) & 1;
  return out;
}

inline int encode_group_value(const std::vector<bool>& bits) {
  int value = 1;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) value += 1 << j;
  return value;
}

// The clause-like constraints one clause expands to: one per assignment of
// the touched groups extending the clause's unique falsifying assignment
// (at most d^r of them).
inline std::vector<CspConstraint> clause_extensions(const std::vector<int>& clause,
                                                    const GroupingMap& map) {
  const int bits = map.params.bits_per_group;
  const int d = map.params.domain_size;

  // the clause is falsified exactly when every literal is false
  std::vector<std::pair<int, int>> forced;  // (padded var, forced bit)
  for (int lit : clause) forced.emplace_back(std::abs(lit), lit > 0 ? 0 : 1);

  std::vector<int> groups;
  for (const auto& [var, bit] : forced) groups.push_back(map.group_of(var));
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

  // per touched group, the domain values consistent with the forced bits
  std::vector<std::vector<int>> choices(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int value = 1; value <= d; ++value) {
      bool consistent = true;
      for (const auto& [var, bit] : forced) {
        if (map.group_of(var) != groups[g]) continue;
        if (decode_group_value(value, bits)[static_cast<std::size_t>(map.bit_of(var)) - 1] !=
            (bit == 1)) {
          consistent = false;
          break;
        }
      }
      if (consistent) choices[g].push_back(value);
    }
  }

  std::vector<CspConstraint> out;
  std::vector<std::size_t> pick(groups.size(), 0);
  for (;;) {
    std::vector<std::pair<int, int>> terms;
    terms.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
      terms.emplace_back(groups[g], choices[g][pick[g]]);
    out.push_back(csp_constraint(std::move(terms)));

    std::size_t g = 0;
    while (g < groups.size() && ++pick[g] == choices[g].size()) pick[g++] = 0;
    if (g == groups.size()) break;
  }
  return out;
}

// Grouping reduction: pads the variable set to a multiple of ell with fresh
// unconstrained variables, then expands every clause into the clause-like
// constraints forbidding exactly its falsifying extensions. Duplicate
// constraints (possible across clauses) are dropped, keeping first
// appearances in order.
inline std::pair<CspInstance, GroupingMap> sat_to_csp(const CnfFormula& f, int domain_size) {
  validate_cnf(f);
  GroupingMap map{reduction_params(f.var_count, domain_size)};

  CspInstance csp;
  csp.var_count = map.params.group_count;
  csp.domain_size = map.params.domain_size;
  csp.arity_cap = f.arity_cap;

  std::set<std::vector<std::pair<int, int>>> seen;
  for (const auto& clause : f.clauses) {
    const auto expanded = clause_extensions(clause, map);
    for (const auto& constraint : expanded) {
      if (static_cast<int>(constraint.terms.size()) > csp.arity_cap)
        fail(Errc::arity_overflow, "clause touches more groups than the arity cap allows");
      if (seen.insert(constraint.terms).second) csp.constraints.push_back(constraint);
    }
  }
  return {std::move(csp), map};
}

// ---------------------------------------------------------------------------
// (d,r)-CSP -> WSP with user-independent constraints
// ---------------------------------------------------------------------------

// Step layout of the reduced workflow: steps 1..d are the fixed steps (step i
// authorized for user i alone), steps d+1..d+k are the free steps carrying
// the CSP variables.
struct WspReductionMap {
  int domain_size = 0;  // d: users and fixed steps
  int group_count = 0;  // k: free steps

  StepId fixed_step(int value) const { return value; }
  StepId free_step(int var) const { return domain_size + var; }

  bool operator==(const WspReductionMap&) const = default;
};

inline std::pair<Workflow, WspReductionMap> csp_to_wsp(const CspInstance& csp) {
  validate_csp(csp);
  WspReductionMap map{csp.domain_size, csp.var_count};

  Workflow w;
  w.user_count = csp.domain_size;
  w.step_count = csp.domain_size + csp.var_count;
  w.auth.reserve(static_cast<std::size_t>(w.step_count));
  std::vector<UserId> everyone(static_cast<std::size_t>(csp.domain_size));
  for (int u = 1; u <= csp.domain_size; ++u) everyone[static_cast<std::size_t>(u) - 1] = u;
  for (int i = 1; i <= csp.domain_size; ++i) w.auth.push_back({i});
  for (int i = 0; i < csp.var_count; ++i) w.auth.push_back(everyone);

  // forbid the conjunction "free step of V agrees with the fixed step of its
  // forbidden value" across the constraint's terms
  for (const auto& constraint : csp.constraints) {
    std::vector<std::pair<StepId, StepId>> pairs;
    pairs.reserve(constraint.terms.size());
    for (const auto& [var, value] : constraint.terms)
      pairs.emplace_back(map.free_step(var), map.fixed_step(value));
    w.constraints.push_back(forbidden_agreement(std::move(pairs)));
  }
  return {std::move(w), map};
}

// ---------------------------------------------------------------------------
// Set Splitting -> WSP with counting constraints
// ---------------------------------------------------------------------------

inline Workflow setsplit_to_wsp(const SetSplittingInstance& inst) {
  validate_setsplit(inst);
  Workflow w;
  w.step_count = static_cast<int>(inst.element_names.size());
  w.user_count = 2;
  w.auth.assign(static_cast<std::size_t>(w.step_count), {1, 2});
  for (const auto& subset : inst.family) {
    if (subset.size() < 2)
      fail(Errc::singleton_set, "singleton family subsets cannot be split");
    w.constraints.push_back(
        counting(1, static_cast<int>(subset.size()) - 1, subset));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Solution lifting
// ---------------------------------------------------------------------------

// Reads the CSP assignment off an authorized plan of the reduced workflow:
// every fixed step must carry its own user, and the free steps' users are the
// domain values.
inline std::vector<int> lift_plan_to_csp(const WspReductionMap& map, const Plan& plan) {
  if (plan.assignment.size() != static_cast<std::size_t>(map.domain_size + map.group_count))
    fail(Errc::unauthorized_plan, "plan does not cover the reduced workflow's steps");
  for (int i = 1; i <= map.domain_size; ++i)
    if (plan.assignment[static_cast<std::size_t>(map.fixed_step(i)) - 1] != i)
      fail(Errc::unauthorized_plan, "fixed step " + std::to_string(i) + " not assigned to its user");
  std::vector<int> assignment(static_cast<std::size_t>(map.group_count));
  for (int var = 1; var <= map.group_count; ++var) {
    const UserId u = plan.assignment[static_cast<std::size_t>(map.free_step(var)) - 1];
    if (u < 1 || u > map.domain_size)
      fail(Errc::unauthorized_plan, "free step assigned outside the user set");
    assignment[static_cast<std::size_t>(var) - 1] = u;
  }
  return assignment;
}

using GroupDecoder = std::function<std::vector<bool>(int value, int bits)>;

// Decodes a CSP assignment back to a boolean model of the original formula,
// dropping the padding variables. The decoder parameter is a test seam; the
// default is the inverse of encode_group_value.
inline std::vector<bool> lift_csp_to_sat(const GroupingMap& map, const std::vector<int>& assignment,
                                         const GroupDecoder& decode = decode_group_value) {
  if (assignment.size() != static_cast<std::size_t>(map.params.group_count))
    fail(Errc::validation, "assignment does not cover the variable groups");
  const int bits = map.params.bits_per_group;
  std::vector<bool> model(static_cast<std::size_t>(map.params.var_count));
  std::vector<bool> group_bits;
  for (int var = 1; var <= map.params.var_count; ++var) {
    const int value = assignment[static_cast<std::size_t>(map.group_of(var)) - 1];
    if (value < 1 || value > map.params.domain_size)
      fail(Errc::value_out_of_range, "assignment value outside the domain");
    group_bits = decode(value, bits);
    model[static_cast<std::size_t>(var) - 1] = group_bits[static_cast<std::size_t>(map.bit_of(var)) - 1];
  }
  return model;
}

}  // namespace wsp
