#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wsp/matching.hpp"
#include "wsp/solve.hpp"

using namespace wsp;

namespace {

Workflow full_auth(int steps, int users) {
  Workflow w;
  w.step_count = steps;
  w.user_count = users;
  std::vector<UserId> everyone;
  for (int u = 1; u <= users; ++u) everyone.push_back(u);
  w.auth.assign(static_cast<std::size_t>(steps), everyone);
  return w;
}

Workflow permuted_users(const Workflow& w, const std::vector<UserId>& sigma) {
  Workflow out = w;
  for (auto& users : out.auth) {
    for (auto& u : users) u = sigma[static_cast<std::size_t>(u) - 1];
    std::sort(users.begin(), users.end());
  }
  return out;
}

}  // namespace

TEST_CASE("brute force on the definition examples") {
  auto one_user = full_auth(2, 1);
  one_user.constraints.push_back(not_equals(1, 2));
  CHECK(solve_wsp_brute(one_user).status == SolveStatus::unsatisfiable);

  auto empty_auth = full_auth(2, 2);
  empty_auth.auth[1] = {};
  CHECK(solve_wsp_brute(empty_auth).status == SolveStatus::unsatisfiable);

  auto tight = full_auth(3, 2);
  tight.constraints.push_back(counting(1, 1, {1, 2, 3}));
  CHECK(solve_wsp_brute(tight).status == SolveStatus::unsatisfiable);
  CHECK_FALSE(testgen::exhaustive_wsp_satisfiable(tight));  // all 8 plans by hand
}

TEST_CASE("brute force returns the lexicographically first witness") {
  auto w = full_auth(2, 2);
  auto free = solve_wsp_brute(w);
  REQUIRE(free.witness.has_value());
  CHECK(free.witness->assignment == std::vector<UserId>{1, 1});

  w.constraints.push_back(not_equals(1, 2));
  auto constrained = solve_wsp_brute(w);
  REQUIRE(constrained.witness.has_value());
  CHECK(constrained.witness->assignment == std::vector<UserId>{1, 2});
}

TEST_CASE("brute force budget") {
  const auto big = full_auth(10, 10);  // 10^10 plans
  CHECK_THROWS_MATCHES(solve_wsp_brute(big), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::budget_exceeded; }));
}

TEST_CASE("brute force agrees with the unpruned odometer") {
  std::mt19937 gen(31);
  for (int round = 0; round < 150; ++round) {
    const auto w = testgen::random_workflow(gen, 4, 3);
    const bool expected = testgen::exhaustive_wsp_satisfiable(w);
    const auto result = solve_wsp_brute(w);
    CHECK((result.status == SolveStatus::satisfiable) == expected);
  }
}

TEST_CASE("pattern solver on the definition examples") {
  auto one_user = full_auth(2, 1);
  one_user.constraints.push_back(not_equals(1, 2));
  const auto res = solve_wsp_pattern(one_user);
  CHECK(res.status == SolveStatus::unsatisfiable);
  CHECK(res.stats.patterns_enumerated == 2);

  const auto free = solve_wsp_pattern(full_auth(3, 2));
  CHECK(free.status == SolveStatus::satisfiable);
  CHECK(free.stats.patterns_enumerated == 1);  // the all-one-block pattern
  REQUIRE(free.witness.has_value());
  CHECK(free.witness->assignment == std::vector<UserId>{1, 1, 1});
}

TEST_CASE("pattern solver refuses explicit tables") {
  auto w = full_auth(2, 2);
  w.constraints.push_back(explicit_table({1, 2}, {{1, 1}}));
  CHECK_THROWS_MATCHES(solve_wsp_pattern(w), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::non_user_independent_constraint;
                       }));
}

TEST_CASE("pattern solver budgets") {
  CHECK_THROWS_AS(solve_wsp_pattern(full_auth(26, 2)), Error);
  SolveConfig tiny;
  tiny.max_pattern_nodes = 1;
  auto w = full_auth(3, 1);
  w.constraints.push_back(not_equals(1, 2));
  CHECK_THROWS_AS(solve_wsp_pattern(w, tiny), Error);
}

TEST_CASE("pattern solver matches brute force") {
  std::mt19937 gen(37);
  for (int round = 0; round < 200; ++round) {
    const auto w = testgen::random_workflow(gen, 6, 4);
    const auto brute = solve_wsp_brute(w);
    const auto pattern = solve_wsp_pattern(w);
    REQUIRE(pattern.status == brute.status);
    if (pattern.status == SolveStatus::unsatisfiable) {
      const auto bell = bell_number(w.step_count).to_u64();
      REQUIRE(bell.has_value());
      CHECK(pattern.stats.patterns_enumerated == *bell);
    } else {
      const auto check = check_plan(w, *pattern.witness);
      CHECK(check.authorized);
      CHECK(check.eligible);
    }
  }
}

TEST_CASE("solver status is invariant under user relabeling") {
  std::mt19937 gen(41);
  for (int round = 0; round < 80; ++round) {
    const auto w = testgen::random_workflow(gen, 5, 4);
    std::vector<UserId> sigma;
    for (int u = 1; u <= w.user_count; ++u) sigma.push_back(u);
    for (std::size_t i = sigma.size(); i > 1; --i)
      std::swap(sigma[i - 1], sigma[rng_below(gen, static_cast<std::uint32_t>(i))]);
    const auto relabeled = permuted_users(w, sigma);
    CHECK(solve_wsp_brute(w).status == solve_wsp_brute(relabeled).status);
    CHECK(solve_wsp_pattern(w).status == solve_wsp_pattern(relabeled).status);
  }
}

TEST_CASE("csp brute force") {
  CspInstance csp;
  csp.var_count = 1;
  csp.domain_size = 2;
  csp.arity_cap = 1;
  csp.constraints.push_back(csp_constraint({{1, 1}}));
  csp.constraints.push_back(csp_constraint({{1, 2}}));
  CHECK_FALSE(solve_csp_brute(csp).has_value());

  csp.constraints.pop_back();
  const auto one_left = solve_csp_brute(csp);
  REQUIRE(one_left.has_value());
  CHECK(*one_left == std::vector<int>{2});

  CspInstance pair;
  pair.var_count = 2;
  pair.domain_size = 2;
  pair.arity_cap = 2;
  pair.constraints.push_back(csp_constraint({{1, 1}, {2, 1}}));
  const auto solved = solve_csp_brute(pair);
  REQUIRE(solved.has_value());
  CHECK(satisfies(pair, *solved));
  CHECK(*solved == std::vector<int>{1, 2});  // lexicographically first
}

TEST_CASE("csp brute force budget") {
  CspInstance csp;
  csp.var_count = 20;
  csp.domain_size = 4;  // 4^20 assignments
  CHECK_THROWS_AS(solve_csp_brute(csp), Error);
}

TEST_CASE("dpll on the definition examples") {
  CnfFormula contradiction;
  contradiction.var_count = 1;
  contradiction.arity_cap = 1;
  contradiction.clauses = {{1}, {-1}};
  CHECK_FALSE(solve_sat_dpll(contradiction).has_value());

  CnfFormula empty;
  empty.var_count = 3;
  const auto model = solve_sat_dpll(empty);
  REQUIRE(model.has_value());
  CHECK(*model == std::vector<bool>{false, false, false});

  CnfFormula implication;
  implication.var_count = 2;
  implication.arity_cap = 2;
  implication.clauses = {{1, 2}, {-1, 2}};
  const auto found = solve_sat_dpll(implication);
  REQUIRE(found.has_value());
  CHECK((*found)[1]);  // every model sets x2
}

TEST_CASE("dpll agrees with the truth table") {
  std::mt19937 gen(43);
  for (int round = 0; round < 250; ++round) {
    const auto f = testgen::random_cnf(gen, 10, 25);
    const auto model = solve_sat_dpll(f);
    CHECK(model.has_value() == testgen::truth_table_satisfiable(f));
    if (model) CHECK(satisfies(f, *model));
  }
}

TEST_CASE("pattern matching against authorization lists") {
  Workflow w;
  w.step_count = 2;
  w.user_count = 1;
  w.auth = {{1}, {1}};
  CHECK_FALSE(match_pattern(Pattern{{1, 2}}, w).has_value());  // both blocks need user 1
  const auto merged = match_pattern(Pattern{{1, 1}}, w);
  REQUIRE(merged.has_value());
  CHECK(*merged == std::vector<UserId>{1});

  const auto two = full_auth(2, 2);
  CHECK(match_pattern(Pattern{{1, 2}}, two).has_value());

  CHECK_THROWS_AS(match_pattern(Pattern{{1}}, two), Error);
  CHECK_THROWS_AS(match_pattern(Pattern{{2, 1}}, two), Error);
}

TEST_CASE("saturating matching basics") {
  CHECK_FALSE(saturating_matching({{1}, {1}}, 1).has_value());
  const auto m = saturating_matching({{1, 2}, {1}}, 2);
  REQUIRE(m.has_value());
  CHECK(*m == std::vector<UserId>{2, 1});  // augmenting path reroutes block 0
  CHECK(saturating_matching({}, 3).has_value());
}

TEST_CASE("degenerate workflows") {
  const auto empty = solve_wsp_brute(Workflow{});
  CHECK(empty.status == SolveStatus::satisfiable);
  CHECK(solve_wsp_pattern(Workflow{}).status == SolveStatus::satisfiable);

  Workflow no_users;
  no_users.step_count = 1;
  no_users.user_count = 0;
  no_users.auth = {{}};
  CHECK(solve_wsp_brute(no_users).status == SolveStatus::unsatisfiable);
  CHECK(solve_wsp_pattern(no_users).status == SolveStatus::unsatisfiable);
}
