#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wsp/generate.hpp"
#include "wsp/reductions.hpp"
#include "wsp/solve.hpp"

namespace wsp {

// One row of the size-trend table: how the reduced instance's parameter
// k' = k + d relates to the source formula's n via ratio = k' log2(k') / n.
struct BenchRecord {
  std::string instance;
  int n = 0;
  int d = 0;
  int ell = 0;
  int k = 0;
  int k_prime = 0;
  double ratio = 0.0;
  std::string solver = "none";
  std::string status = "skipped";
  std::uint64_t patterns_enumerated = 0;
  double wall_time_ms = 0.0;
};

inline BenchRecord bench_record_for(int n) {
  const auto params = reduction_params(n, choose_d(n));
  BenchRecord rec;
  rec.instance = "n" + std::to_string(n);
  rec.n = n;
  rec.d = params.domain_size;
  rec.ell = params.bits_per_group;
  rec.k = params.group_count;
  rec.k_prime = params.group_count + params.domain_size;
  rec.ratio = static_cast<double>(rec.k_prime) * std::log2(static_cast<double>(rec.k_prime)) /
              static_cast<double>(n);
  return rec;
}

// Sub-instance with the reduced workflow truncated to its first `step_cap`
// steps: a random 3-SAT formula restricted to the variables of the first
// step_cap - d groups reduces to exactly those steps. Nothing to time when
// the fixed steps alone exceed the cap.
inline std::optional<Workflow> truncated_bench_workflow(int n, int step_cap, std::uint32_t seed,
                                                        double clause_factor = 4.0) {
  const int d = choose_d(n);
  const auto params = reduction_params(n, d);
  const int groups = std::min(step_cap - d, params.group_count);
  if (groups <= 0) return std::nullopt;
  const int vars = groups * params.bits_per_group;
  if (vars < 3) return std::nullopt;
  const int clauses = static_cast<int>(clause_factor * vars);
  const auto cnf = random_3sat(vars, clauses, seed);
  auto [csp, grouping] = sat_to_csp(cnf, d);
  return csp_to_wsp(csp).first;
}

// Ratio rows for every requested n, sorted; with `time_solves`, the pattern
// solver additionally runs on the truncated sub-instance, reporting the
// median wall time over `repetitions`.
inline std::vector<BenchRecord> run_bench(std::vector<int> sizes, int repetitions, bool time_solves,
                                          int step_cap, std::uint32_t seed,
                                          const SolveConfig& cfg = {}) {
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::vector<BenchRecord> records;
  for (int n : sizes) {
    BenchRecord rec = bench_record_for(n);
    if (time_solves) {
      if (const auto workflow = truncated_bench_workflow(n, step_cap, seed)) {
        std::vector<double> times;
        SolveResult result;
        for (int rep = 0; rep < std::max(1, repetitions); ++rep) {
          const auto start = std::chrono::steady_clock::now();
          result = solve_wsp_pattern(*workflow, cfg);
          const auto stop = std::chrono::steady_clock::now();
          times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        }
        std::sort(times.begin(), times.end());
        rec.solver = "pattern";
        rec.status = to_string(result.status);
        rec.patterns_enumerated = result.stats.patterns_enumerated;
        rec.wall_time_ms = times[times.size() / 2];
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

inline std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "instance,n,d,ell,k,k_prime,ratio,solver,status,patterns_enumerated,wall_time_ms\n";
  for (const auto& rec : records) {
    out << rec.instance << ',' << rec.n << ',' << rec.d << ',' << rec.ell << ',' << rec.k << ','
        << rec.k_prime << ',' << std::fixed << std::setprecision(4) << rec.ratio << ','
        << rec.solver << ',' << rec.status << ',' << rec.patterns_enumerated << ','
        << std::setprecision(3) << rec.wall_time_ms << '\n';
  }
  return out.str();
}

}  // namespace wsp
