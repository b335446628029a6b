#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wsp/instances.hpp"
#include "wsp/reductions.hpp"
#include "wsp/solve.hpp"

namespace wsp {

// Test seams for the chain verifier; the defaults run the real code paths.
struct ChainHooks {
  GroupDecoder decode_group;  // overrides bit decoding in the lifting stage
};

struct ChainRecord {
  std::string instance;
  int domain_size = 0;
  bool sat_dpll = false;
  bool sat_csp = false;
  bool sat_wsp_brute = false;
  bool sat_wsp_pattern = false;
  bool statuses_agree = false;
  bool lift_ok = false;

  bool ok() const { return statuses_agree && lift_ok; }
};

// Runs one formula through the whole pipeline: DPLL on the formula itself,
// brute force on the grouped CSP, and both WSP solvers on the reduced
// workflow; lifts every witness back and re-checks it against the stage it
// came from, down to clause-by-clause evaluation on the original formula.
inline ChainRecord run_chain(std::string name, const CnfFormula& f, int domain_size,
                             const SolveConfig& cfg = {}, const ChainHooks& hooks = {}) {
  const GroupDecoder decode = hooks.decode_group ? hooks.decode_group : GroupDecoder(decode_group_value);

  ChainRecord rec;
  rec.instance = std::move(name);
  rec.domain_size = domain_size;
  rec.lift_ok = true;

  const auto dpll_model = solve_sat_dpll(f);
  rec.sat_dpll = dpll_model.has_value();
  if (dpll_model) rec.lift_ok = rec.lift_ok && satisfies(f, *dpll_model);

  auto [csp, grouping] = sat_to_csp(f, domain_size);
  const auto csp_assignment = solve_csp_brute(csp, cfg);
  rec.sat_csp = csp_assignment.has_value();
  if (csp_assignment) {
    rec.lift_ok = rec.lift_ok && satisfies(csp, *csp_assignment);
    rec.lift_ok = rec.lift_ok && satisfies(f, lift_csp_to_sat(grouping, *csp_assignment, decode));
  }

  auto [workflow, wsp_map] = csp_to_wsp(csp);
  const auto brute = solve_wsp_brute(workflow, cfg);
  const auto pattern = solve_wsp_pattern(workflow, cfg);
  rec.sat_wsp_brute = brute.status == SolveStatus::satisfiable;
  rec.sat_wsp_pattern = pattern.status == SolveStatus::satisfiable;
  for (const auto* result : {&brute, &pattern}) {
    if (result->status != SolveStatus::satisfiable) continue;
    const auto lifted = lift_plan_to_csp(wsp_map, *result->witness);
    rec.lift_ok = rec.lift_ok && satisfies(csp, lifted);
    rec.lift_ok = rec.lift_ok && satisfies(f, lift_csp_to_sat(grouping, lifted, decode));
  }

  rec.statuses_agree = rec.sat_dpll == rec.sat_csp && rec.sat_csp == rec.sat_wsp_brute &&
                       rec.sat_wsp_brute == rec.sat_wsp_pattern;
  return rec;
}

inline std::string chain_csv(const std::vector<ChainRecord>& records) {
  std::ostringstream out;
  out << "instance,d,sat,csp,wsp_brute,wsp_pattern,lift_ok,agree\n";
  const auto status = [](bool sat) { return sat ? "SAT" : "UNSAT"; };
  for (const auto& rec : records) {
    out << rec.instance << ',' << rec.domain_size << ',' << status(rec.sat_dpll) << ','
        << status(rec.sat_csp) << ',' << status(rec.sat_wsp_brute) << ','
        << status(rec.sat_wsp_pattern) << ',' << (rec.lift_ok ? "yes" : "no") << ','
        << (rec.ok() ? "agree" : "DISAGREE") << '\n';
  }
  return out.str();
}

}  // namespace wsp
