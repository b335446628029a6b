// Acceptance suite: runs every top-level correctness criterion at its stated
// scale and tolerance, printing one PASS/FAIL line per criterion. Exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "wsp/wsp.hpp"

using namespace wsp;

namespace {

struct Criterion {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<Criterion> g_criteria;

template <typename Fn>
void criterion(const std::string& name, Fn&& body) {
  Criterion c;
  c.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.detail = body();
    c.passed = true;
  } catch (const std::exception& e) {
    c.detail = e.what();
    c.passed = false;
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  g_criteria.push_back(std::move(c));
}

[[noreturn]] void reject(const std::string& message) { throw std::runtime_error(message); }

struct ChainCase {
  CnfFormula formula;
  int domain_size;
  CspInstance csp;
  GroupingMap grouping;
  Workflow workflow;
  WspReductionMap wsp_map;
};

// the shared corpus: 200 random 3-CNFs with n <= 12, reduced at d in {2,4}
std::vector<ChainCase> build_corpus() {
  std::vector<ChainCase> cases;
  std::mt19937 meta(20240829);
  for (int i = 0; i < 200; ++i) {
    const int n = rng_range(meta, 4, 12);
    const int m = rng_range(meta, 3 * n, 5 * n);
    const auto f = random_3sat(n, m, 7000 + static_cast<std::uint32_t>(i));
    for (int d : {2, 4}) {
      ChainCase cc{f, d, {}, {}, {}, {}};
      auto [csp, grouping] = sat_to_csp(f, d);
      auto [workflow, wsp_map] = csp_to_wsp(csp);
      cc.csp = std::move(csp);
      cc.grouping = grouping;
      cc.workflow = std::move(workflow);
      cc.wsp_map = wsp_map;
      cases.push_back(std::move(cc));
    }
  }
  return cases;
}

// step-identity-free key: user-independence is invariant under renumbering
std::string constraint_shape(const Constraint& c) {
  const auto scope = scope_of(c);
  std::map<StepId, int> renumber;
  for (std::size_t i = 0; i < scope.size(); ++i) renumber[scope[i]] = static_cast<int>(i) + 1;
  std::ostringstream key;
  std::visit(
      [&](const auto& kind) {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, NotEquals>) {
          key << "ne " << renumber[kind.a] << ' ' << renumber[kind.b];
        } else if constexpr (std::is_same_v<T, Counting>) {
          key << "count " << kind.min_per_user << ' ' << kind.max_per_user << " #" << kind.scope.size();
        } else if constexpr (std::is_same_v<T, ForbiddenAgreement>) {
          key << "fa";
          for (const auto& [a, b] : kind.pairs) key << " (" << renumber[a] << ' ' << renumber[b] << ')';
        } else {
          key << "table";  // not produced by the reductions
        }
      },
      c);
  return key.str();
}

Constraint renumber_constraint(const Constraint& c) {
  const auto scope = scope_of(c);
  std::map<StepId, int> renumber;
  for (std::size_t i = 0; i < scope.size(); ++i) renumber[scope[i]] = static_cast<int>(i) + 1;
  return std::visit(
      [&](const auto& kind) -> Constraint {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, NotEquals>) {
          return not_equals(renumber[kind.a], renumber[kind.b]);
        } else if constexpr (std::is_same_v<T, Counting>) {
          std::vector<StepId> scope_new;
          for (StepId s : kind.scope) scope_new.push_back(renumber[s]);
          return counting(kind.min_per_user, kind.max_per_user, std::move(scope_new));
        } else if constexpr (std::is_same_v<T, ForbiddenAgreement>) {
          std::vector<std::pair<StepId, StepId>> pairs;
          for (const auto& [a, b] : kind.pairs) pairs.emplace_back(renumber[a], renumber[b]);
          return forbidden_agreement(std::move(pairs));
        } else {
          return kind;
        }
      },
      c);
}

std::string criterion_chain_soundness(const std::vector<ChainCase>& corpus) {
  int rows = 0;
  for (const auto& cc : corpus) {
    const auto rec = run_chain("case" + std::to_string(rows), cc.formula, cc.domain_size);
    if (!rec.statuses_agree)
      reject("status disagreement on corpus case " + std::to_string(rows) + " (d=" +
             std::to_string(cc.domain_size) + ")");
    if (!rec.lift_ok) reject("lifted witness failed re-checking on case " + std::to_string(rows));
    ++rows;
  }
  return std::to_string(rows) + "/" + std::to_string(rows) + " rows agree, all lifts verified";
}

std::string criterion_lemma2_structure(const std::vector<ChainCase>& corpus) {
  std::map<std::string, bool> shape_cache;
  const std::vector<std::vector<UserId>> user_sets{{1, 2}, {1, 2, 3}, {1, 2, 3, 4}};
  int constraints_checked = 0;
  int exhausted = 0;

  for (const auto& cc : corpus) {
    const int d = cc.domain_size;
    const int k = cc.csp.var_count;
    if (cc.workflow.user_count != d) reject("user count differs from d");
    if (cc.workflow.step_count != k + d) reject("step count differs from k+d");
    for (int i = 1; i <= d; ++i)
      if (cc.workflow.auth[static_cast<std::size_t>(i) - 1] != std::vector<UserId>{i})
        reject("fixed step " + std::to_string(i) + " lacks its singleton authorization");
    for (int s = d + 1; s <= cc.workflow.step_count; ++s)
      if (cc.workflow.auth[static_cast<std::size_t>(s) - 1].size() != static_cast<std::size_t>(d))
        reject("free step " + std::to_string(s) + " lacks the full authorization list");

    for (const auto& c : cc.workflow.constraints) {
      if (scope_of(c).size() > 2 * static_cast<std::size_t>(cc.csp.arity_cap))
        reject("constraint arity exceeds 2r");
      const auto key = constraint_shape(c);
      auto found = shape_cache.find(key);
      if (found == shape_cache.end()) {
        bool independent = true;
        const auto canonical = renumber_constraint(c);
        for (const auto& users : user_sets)
          independent = independent && is_user_independent(canonical, users);
        found = shape_cache.emplace(key, independent).first;
      }
      if (!found->second) reject("emitted constraint is not user-independent: " + key);
      ++constraints_checked;
    }
  }

  // fixed-step pinning, by exhausting every plan of the smallest instances
  for (const auto& cc : corpus) {
    if (cc.domain_size != 2 || cc.workflow.step_count > 8 || exhausted >= 5) continue;
    ++exhausted;
    const int steps = cc.workflow.step_count;
    Plan plan{std::vector<UserId>(static_cast<std::size_t>(steps), 1)};
    for (;;) {
      if (check_plan(cc.workflow, plan).authorized)
        for (int i = 1; i <= cc.domain_size; ++i)
          if (plan.assignment[static_cast<std::size_t>(cc.wsp_map.fixed_step(i)) - 1] != i)
            reject("authorized plan does not pin fixed step " + std::to_string(i));
      int pos = steps - 1;
      while (pos >= 0 && plan.assignment[static_cast<std::size_t>(pos)] == cc.workflow.user_count) {
        plan.assignment[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++plan.assignment[static_cast<std::size_t>(pos)];
    }
  }

  return std::to_string(constraints_checked) + " constraints structurally valid and user-independent, " +
         std::to_string(exhausted) + " instances exhaustively pin their fixed steps";
}

std::string criterion_lemma1_structure(const std::vector<ChainCase>& corpus) {
  int exhaustive_cases = 0;
  for (const auto& cc : corpus) {
    const auto& p = cc.grouping.params;
    const int expected_k = (p.var_count + p.bits_per_group - 1) / p.bits_per_group;
    if (cc.csp.var_count != expected_k) reject("group count differs from ceil(n/ell)");

    std::uint64_t per_clause_cap = 1;
    for (int i = 0; i < cc.csp.arity_cap; ++i) per_clause_cap *= static_cast<std::uint64_t>(p.domain_size);
    for (const auto& clause : cc.formula.clauses)
      if (clause_extensions(clause, cc.grouping).size() > per_clause_cap)
        reject("a clause expanded past d^r constraints");

    if (p.var_count > 8) continue;
    ++exhaustive_cases;
    // pointwise: the CSP forbids exactly the assignments falsifying a clause
    std::uint64_t total = 1;
    for (int g = 0; g < cc.csp.var_count; ++g) total *= static_cast<std::uint64_t>(p.domain_size);
    std::vector<int> assignment(static_cast<std::size_t>(cc.csp.var_count), 1);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code;
      for (int g = 0; g < cc.csp.var_count; ++g) {
        assignment[static_cast<std::size_t>(g)] = static_cast<int>(rest % static_cast<std::uint64_t>(p.domain_size)) + 1;
        rest /= static_cast<std::uint64_t>(p.domain_size);
      }
      // independent decoder: value-1 in little-endian bits per group
      std::vector<bool> model(static_cast<std::size_t>(p.var_count));
      for (int var = 1; var <= p.var_count; ++var) {
        const int group = (var - 1) / p.bits_per_group;
        const int bit = (var - 1) % p.bits_per_group;
        model[static_cast<std::size_t>(var) - 1] =
            ((assignment[static_cast<std::size_t>(group)] - 1) >> bit) & 1;
      }
      if (satisfies(cc.csp, assignment) != satisfies(cc.formula, model))
        reject("forbidden-set mismatch on an exhaustive case");
    }
  }
  if (exhaustive_cases < 20) reject("too few small instances for the exhaustive check");
  return "sizes match ceil(n/ell), expansions within d^r, " + std::to_string(exhaustive_cases) +
         " instances checked assignment-by-assignment";
}

std::string criterion_set_splitting() {
  std::mt19937 gen(424242);
  int disagreements = 0;
  for (int i = 0; i < 100; ++i) {
    const auto inst = testgen::random_setsplit(gen, 10);
    const bool expected = testgen::brute_force_splittable(inst);
    const auto workflow = setsplit_to_wsp(inst);
    const bool reduced = solve_wsp_pattern(workflow).status == SolveStatus::satisfiable;
    const bool reduced_brute = solve_wsp_brute(workflow).status == SolveStatus::satisfiable;
    if (reduced != expected || reduced_brute != expected) ++disagreements;
  }
  if (disagreements != 0) reject(std::to_string(disagreements) + " disagreements");
  return "100/100 instances agree with the 2^|S| check";
}

std::string criterion_regularity() {
  for (int size = 1; size <= 4; ++size) {
    std::vector<StepId> scope;
    for (int s = 1; s <= size; ++s) scope.push_back(s);
    for (int users = size; users <= std::min(size + 1, 5); ++users) {
      std::vector<UserId> user_set;
      for (int u = 1; u <= users; ++u) user_set.push_back(u);
      for (int lo = 1; lo <= size; ++lo)
        for (int hi = lo; hi <= size; ++hi)
          if (!is_regular(counting(lo, hi, scope), user_set))
            reject("counting(" + std::to_string(lo) + "," + std::to_string(hi) + ",|L|=" +
                   std::to_string(size) + ") reported non-regular");
    }
  }

  std::vector<std::vector<UserId>> rows;
  for (UserId a = 1; a <= 3; ++a)
    for (UserId b = 1; b <= 3; ++b)
      for (UserId c = 1; c <= 3; ++c)
        if (a != b && b != c && a != c) rows.push_back({a, b, c});
  const auto table = explicit_table({1, 2, 3}, rows);
  if (!is_user_independent(table, {1, 2, 3})) reject("the 2-user table should be user-independent");
  if (is_regular(table, {1, 2, 3})) reject("the 2-user table should not be regular");
  return "every counting constraint regular; the at-most-2-users table is user-independent yet not regular";
}

std::string criterion_solver_equivalence() {
  const std::vector<std::uint64_t> bell_expected{1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (int k = 1; k <= 10; ++k) {
    const auto bell = bell_number(k).to_u64();
    if (!bell || *bell != bell_expected[static_cast<std::size_t>(k) - 1])
      reject("bell(" + std::to_string(k) + ") mismatch");
  }

  std::mt19937 gen(987654);
  int unsat_cases = 0;
  for (int i = 0; i < 500; ++i) {
    const auto w = testgen::random_workflow(gen, 6, 4);
    const auto brute = solve_wsp_brute(w);
    const auto pattern = solve_wsp_pattern(w);
    if (brute.status != pattern.status)
      reject("solver disagreement on random workflow " + std::to_string(i));
    if (pattern.status == SolveStatus::unsatisfiable) {
      ++unsat_cases;
      const auto bell = bell_number(w.step_count).to_u64();
      if (pattern.stats.patterns_enumerated != *bell)
        reject("pattern count differs from Bell(k) on workflow " + std::to_string(i));
    }
  }
  return "500/500 statuses agree; " + std::to_string(unsat_cases) +
         " unsatisfiable runs covered exactly Bell(k) patterns";
}

std::string criterion_size_trend() {
  struct Expected {
    int n, d, ell, k, k_prime;
    double ratio;
  };
  const std::vector<Expected> table{
      {256, 16, 4, 64, 80, 1.98}, {1024, 32, 5, 205, 237, 1.83}, {4096, 128, 7, 586, 714, 1.65}};
  double previous = 1e9;
  for (const auto& row : table) {
    const auto rec = bench_record_for(row.n);
    if (rec.d != row.d || rec.ell != row.ell || rec.k != row.k || rec.k_prime != row.k_prime)
      reject("size tuple mismatch at n=" + std::to_string(row.n));
    if (std::abs(rec.ratio - row.ratio) > 0.01)
      reject("ratio out of tolerance at n=" + std::to_string(row.n));
    if (rec.ratio >= previous) reject("ratio not strictly decreasing at n=" + std::to_string(row.n));
    previous = rec.ratio;
  }
  return "(d,ell,k,k') = (16,4,64,80), (32,5,205,237), (128,7,586,714); ratios 1.98 > 1.83 > 1.65";
}

}  // namespace

int main() {
  const auto corpus = build_corpus();

  criterion("reduction-chain soundness (200 cnfs x d in {2,4})",
            [&] { return criterion_chain_soundness(corpus); });
  criterion("reduced-workflow structure (d users, k+d steps, arity <= 2r, pinned fixed steps)",
            [&] { return criterion_lemma2_structure(corpus); });
  criterion("grouping structure (k = ceil(n/ell), <= d^r per clause, exact forbidden sets)",
            [&] { return criterion_lemma1_structure(corpus); });
  criterion("set-splitting equivalence (100 instances, |S| <= 10)",
            [] { return criterion_set_splitting(); });
  criterion("counting constraints regular; a user-independent non-regular witness",
            [] { return criterion_regularity(); });
  criterion("solver oracle equivalence (500 workflows) and Bell coverage",
            [] { return criterion_solver_equivalence(); });
  criterion("reduction size trend (n = 256, 1024, 4096)", [] { return criterion_size_trend(); });

  int passed = 0;
  for (std::size_t i = 0; i < g_criteria.size(); ++i) {
    const auto& c = g_criteria[i];
    std::cout << '[' << i + 1 << '/' << g_criteria.size() << "] "
              << (c.passed ? "PASS" : "FAIL") << "  " << c.name << " — " << c.detail << " ("
              << std::fixed << std::setprecision(2) << c.seconds << "s)\n";
    if (c.passed) ++passed;
  }
  std::cout << "acceptance: " << passed << '/' << g_criteria.size() << " criteria passed\n";
  return passed == static_cast<int>(g_criteria.size()) ? 0 : 1;
}
