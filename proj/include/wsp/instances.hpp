#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "wsp/error.hpp"

namespace wsp {

// ---------------------------------------------------------------------------
// Clause-like CSP
// ---------------------------------------------------------------------------

// One forbidden assignment: the conjunction of these equalities must not hold.
struct CspConstraint {
  std::vector<std::pair<int, int>> terms;  // (variable, value), sorted by variable

  bool operator==(const CspConstraint&) const = default;
};

inline CspConstraint csp_constraint(std::vector<std::pair<int, int>> terms) {
  if (terms.empty()) fail(Errc::validation, "csp constraint needs at least one term");
  std::sort(terms.begin(), terms.end());
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i].first == terms[i - 1].first)
      fail(Errc::validation, "csp constraint references a variable twice");
  return CspConstraint{std::move(terms)};
}

struct CspInstance {
  int var_count = 0;
  int domain_size = 0;
  int arity_cap = 0;
  std::vector<CspConstraint> constraints;

  bool operator==(const CspInstance&) const = default;
};

inline void validate_csp(const CspInstance& csp) {
  if (csp.var_count < 0 || csp.domain_size < 1 || csp.arity_cap < 0)
    fail(Errc::validation, "csp header values out of range");
  for (const auto& c : csp.constraints) {
    if (c.terms.empty()) fail(Errc::validation, "csp constraint needs at least one term");
    if (static_cast<int>(c.terms.size()) > csp.arity_cap)
      fail(Errc::arity_overflow, "csp constraint arity exceeds the declared cap");
    if (!std::is_sorted(c.terms.begin(), c.terms.end()))
      fail(Errc::validation, "csp constraint terms must be sorted by variable");
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
      const auto& [var, val] = c.terms[i];
      if (i > 0 && var == c.terms[i - 1].first)
        fail(Errc::validation, "csp constraint references a variable twice");
      if (var < 1 || var > csp.var_count)
        fail(Errc::validation, "csp constraint references unknown variable " + std::to_string(var));
      if (val < 1 || val > csp.domain_size)
        fail(Errc::value_out_of_range,
             "value-out-of-domain: " + std::to_string(val) + " with d=" + std::to_string(csp.domain_size));
    }
  }
}

// A constraint is violated when every one of its equalities holds.
inline bool violates(const CspConstraint& c, const std::vector<int>& assignment) {
  for (const auto& [var, val] : c.terms)
    if (assignment[var - 1] != val) return false;
  return true;
}

inline bool satisfies(const CspInstance& csp, const std::vector<int>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(csp.var_count))
    fail(Errc::validation, "csp assignment must be total");
  for (int v : assignment)
    if (v < 1 || v > csp.domain_size)
      fail(Errc::value_out_of_range, "csp assignment value out of domain");
  for (const auto& c : csp.constraints)
    if (violates(c, assignment)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// CNF
// ---------------------------------------------------------------------------

struct CnfFormula {
  int var_count = 0;
  int arity_cap = 0;
  std::vector<std::vector<int>> clauses;  // signed DIMACS-style literals

  bool operator==(const CnfFormula&) const = default;
};

inline void validate_cnf(const CnfFormula& f) {
  if (f.var_count < 0 || f.arity_cap < 0)
    fail(Errc::validation, "cnf header values out of range");
  for (const auto& clause : f.clauses) {
    if (clause.empty()) fail(Errc::validation, "empty clause");
    if (static_cast<int>(clause.size()) > f.arity_cap)
      fail(Errc::arity_overflow, "clause length exceeds the declared arity cap");
    std::vector<int> vars;
    for (int lit : clause) {
      const int var = std::abs(lit);
      if (lit == 0 || var > f.var_count)
        fail(Errc::validation, "literal-out-of-range: " + std::to_string(lit));
      vars.push_back(var);
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
      fail(Errc::validation, "clause contains a variable twice");
  }
}

// Clause-by-clause evaluation; the model must cover every variable.
inline bool satisfies(const CnfFormula& f, const std::vector<bool>& model) {
  if (model.size() != static_cast<std::size_t>(f.var_count))
    fail(Errc::validation, "model must assign every variable");
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool value = model[std::abs(lit) - 1];
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Set Splitting
// ---------------------------------------------------------------------------

struct SetSplittingInstance {
  std::vector<std::string> element_names;  // ground set; element i is names[i-1]
  std::vector<std::vector<int>> family;    // subsets as sorted element indices

  bool operator==(const SetSplittingInstance&) const = default;
};

inline void validate_setsplit(const SetSplittingInstance& inst) {
  std::vector<std::string> names = inst.element_names;
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    fail(Errc::validation, "ground set elements must be distinct");
  for (const auto& name : names)
    if (name.empty()) fail(Errc::validation, "ground set element with empty name");
  const int size = static_cast<int>(inst.element_names.size());
  for (const auto& subset : inst.family) {
    if (subset.empty()) fail(Errc::validation, "empty-subset in family");
    if (!std::is_sorted(subset.begin(), subset.end()) ||
        std::adjacent_find(subset.begin(), subset.end()) != subset.end())
      fail(Errc::validation, "family subset must be sorted and duplicate-free");
    for (int e : subset)
      if (e < 1 || e > size)
        fail(Errc::validation, "family subset references unknown element " + std::to_string(e));
  }
}

// True iff the 2-coloring leaves no family subset monochromatic.
inline bool splits(const SetSplittingInstance& inst, const std::vector<int>& coloring) {
  if (coloring.size() != inst.element_names.size())
    fail(Errc::validation, "coloring must cover the ground set");
  for (const auto& subset : inst.family) {
    bool saw1 = false, saw2 = false;
    for (int e : subset) (coloring[e - 1] == 1 ? saw1 : saw2) = true;
    if (!saw1 || !saw2) return false;
  }
  return true;
}

}  // namespace wsp
