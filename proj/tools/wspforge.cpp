// Command-line front end: instance generation via the reductions, solving,
// whole-chain cross-verification, and the size-trend benchmark table.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wsp/wsp.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) wsp::fail(wsp::Errc::parse_error, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) wsp::fail(wsp::Errc::parse_error, "cannot write " + path.string());
  out << content;
}

int parse_domain_option(const std::string& text, const wsp::CnfFormula& f) {
  if (text == "auto") return wsp::choose_d(f.var_count);
  int d = 0;
  try {
    d = std::stoi(text);
  } catch (const std::exception&) {
    wsp::fail(wsp::Errc::validation, "--d expects 'auto' or a power of two, got '" + text + "'");
  }
  if (d < 2 || !wsp::is_power_of_two(static_cast<std::uint64_t>(d)))
    wsp::fail(wsp::Errc::validation, "--d must be a power of two >= 2");
  return d;
}

void print_params(const wsp::ReductionParams& p) {
  std::cout << "reduction: n=" << p.var_count << " padded_n=" << p.padded_var_count
            << " d=" << p.domain_size << " ell=" << p.bits_per_group << " k=" << p.group_count
            << " k_prime=" << p.group_count + p.domain_size << '\n';
}

void reduce_and_write(const wsp::CnfFormula& f, int d, const std::filesystem::path& stem) {
  const std::string source_hash = wsp::hex64(wsp::fnv1a64(wsp::serialize_dimacs(f)));
  print_params(wsp::reduction_params(f.var_count, d));
  auto [csp, grouping] = wsp::sat_to_csp(f, d);
  const auto& p = grouping.params;

  std::vector<std::pair<std::string, std::string>> meta{
      {"generated-by", "wspforge generate"},
      {"source-cnf-fnv1a", source_hash},
      {"d", std::to_string(p.domain_size)},
      {"ell", std::to_string(p.bits_per_group)},
      {"k", std::to_string(p.group_count)},
      {"padded-n", std::to_string(p.padded_var_count)},
      {"padding", std::to_string(p.padded_var_count - p.var_count)},
  };

  auto csp_path = stem;
  csp_path.replace_extension(".csp");
  write_file(csp_path, wsp::metadata_block(meta) + wsp::serialize_csp(csp));
  std::cout << "wrote " << csp_path.string() << '\n';

  auto [workflow, wsp_map] = wsp::csp_to_wsp(csp);
  auto wsp_path = stem;
  wsp_path.replace_extension(".wsp");
  write_file(wsp_path, wsp::metadata_block(meta) + wsp::serialize_workflow(workflow));
  std::cout << "wrote " << wsp_path.string() << '\n';
}

int run_generate(const std::string& from, bool random3, int rand_n, int rand_m,
                 std::uint32_t seed, const std::string& d_text, std::string out) {
  if (random3 == !from.empty())
    wsp::fail(wsp::Errc::validation, "generate needs exactly one of --from and --random-3sat");

  if (random3) {
    const auto f = wsp::random_3sat(rand_n, rand_m, seed);
    if (out.empty())
      out = "random_n" + std::to_string(rand_n) + "_m" + std::to_string(rand_m) + "_s" +
            std::to_string(seed);
    std::vector<std::pair<std::string, std::string>> meta{
        {"generated-by", "wspforge generate --random-3sat"},
        {"n", std::to_string(rand_n)},
        {"m", std::to_string(rand_m)},
        {"seed", std::to_string(seed)},
    };
    auto cnf_path = std::filesystem::path(out);
    cnf_path.replace_extension(".cnf");
    write_file(cnf_path, wsp::metadata_block(meta, 'c') + wsp::serialize_dimacs(f));
    std::cout << "wrote " << cnf_path.string() << '\n';
    if (!d_text.empty()) reduce_and_write(f, parse_domain_option(d_text, f), cnf_path);
    return 0;
  }

  const auto text = read_file(from);
  const auto stem = out.empty() ? std::filesystem::path(from) : std::filesystem::path(out);
  switch (wsp::sniff_format(text)) {
    case wsp::InstanceKind::cnf: {
      const auto f = wsp::parse_dimacs(text);
      reduce_and_write(f, parse_domain_option(d_text.empty() ? "auto" : d_text, f), stem);
      return 0;
    }
    case wsp::InstanceKind::setsplit: {
      const auto inst = wsp::parse_setsplit(text);
      const auto workflow = wsp::setsplit_to_wsp(inst);
      std::vector<std::pair<std::string, std::string>> meta{
          {"generated-by", "wspforge generate"},
          {"source-ss-fnv1a", wsp::hex64(wsp::fnv1a64(wsp::serialize_setsplit(inst)))},
      };
      auto wsp_path = stem;
      wsp_path.replace_extension(".wsp");
      write_file(wsp_path, wsp::metadata_block(meta) + wsp::serialize_workflow(workflow));
      std::cout << "wrote " << wsp_path.string() << '\n';
      return 0;
    }
    default:
      wsp::fail(wsp::Errc::validation, "generate accepts a .cnf or set-splitting source");
  }
}

void print_plan(const wsp::Plan& plan) {
  std::cout << "plan:";
  for (std::size_t i = 0; i < plan.assignment.size(); ++i)
    std::cout << ' ' << i + 1 << "->" << plan.assignment[i];
  std::cout << '\n';
}

int report_wsp_result(const wsp::SolveResult& result, const std::string& algorithm) {
  std::cout << "algorithm: " << algorithm << '\n';
  std::cout << "status: "
            << (result.status == wsp::SolveStatus::satisfiable ? "SATISFIABLE" : "UNSATISFIABLE")
            << '\n';
  if (result.witness) print_plan(*result.witness);
  std::cout << "plans_enumerated: " << result.stats.plans_enumerated << '\n'
            << "patterns_enumerated: " << result.stats.patterns_enumerated << '\n'
            << "matchings_attempted: " << result.stats.matchings_attempted << '\n';
  return result.status == wsp::SolveStatus::satisfiable ? 0 : 1;
}

int solve_workflow_cli(const wsp::Workflow& workflow, std::string algorithm,
                       const wsp::SolveConfig& cfg) {
  if (algorithm == "auto") {
    const bool tables = std::any_of(workflow.constraints.begin(), workflow.constraints.end(),
                                    [](const wsp::Constraint& c) {
                                      return std::holds_alternative<wsp::ExplicitTable>(c);
                                    });
    algorithm = "brute";
    if (!tables && workflow.step_count <= cfg.max_pattern_steps &&
        wsp::bell_number(workflow.step_count) <= wsp::BigNat(cfg.max_pattern_nodes))
      algorithm = "pattern";
  }
  if (algorithm == "pattern")
    return report_wsp_result(wsp::solve_wsp_pattern(workflow, cfg), "pattern");
  return report_wsp_result(wsp::solve_wsp_brute(workflow, cfg), "brute");
}

int run_solve(const std::string& path, const std::string& algorithm, const wsp::SolveConfig& cfg) {
  const auto text = read_file(path);
  switch (wsp::sniff_format(text)) {
    case wsp::InstanceKind::workflow:
      return solve_workflow_cli(wsp::parse_workflow(text), algorithm, cfg);
    case wsp::InstanceKind::setsplit:
      return solve_workflow_cli(wsp::setsplit_to_wsp(wsp::parse_setsplit(text)), algorithm, cfg);
    case wsp::InstanceKind::csp: {
      const auto assignment = wsp::solve_csp_brute(wsp::parse_csp(text), cfg);
      std::cout << "status: " << (assignment ? "SATISFIABLE" : "UNSATISFIABLE") << '\n';
      if (assignment) {
        std::cout << "assignment:";
        for (std::size_t i = 0; i < assignment->size(); ++i)
          std::cout << ' ' << 'V' << i + 1 << '=' << (*assignment)[i];
        std::cout << '\n';
      }
      return assignment ? 0 : 1;
    }
    case wsp::InstanceKind::cnf: {
      const auto model = wsp::solve_sat_dpll(wsp::parse_dimacs(text));
      std::cout << "status: " << (model ? "SATISFIABLE" : "UNSATISFIABLE") << '\n';
      if (model) {
        std::cout << "model:";
        for (std::size_t i = 0; i < model->size(); ++i)
          std::cout << ' ' << 'x' << i + 1 << '=' << ((*model)[i] ? 1 : 0);
        std::cout << '\n';
      }
      return model ? 0 : 1;
    }
  }
  return 2;
}

int run_verify_chain(const std::string& corpus, const std::vector<int>& domains,
                     const std::string& out, const wsp::SolveConfig& cfg) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus))
    if (entry.is_regular_file() && entry.path().extension() == ".cnf")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) wsp::fail(wsp::Errc::validation, "no .cnf files under " + corpus);

  std::vector<wsp::ChainRecord> records;
  for (const auto& file : files) {
    const auto f = wsp::parse_dimacs(read_file(file));
    for (int d : domains)
      records.push_back(wsp::run_chain(file.filename().string(), f, d, cfg));
  }

  const auto csv = wsp::chain_csv(records);
  if (out.empty())
    std::cout << csv;
  else
    write_file(out, csv);

  const auto agreeing = static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.ok(); }));
  std::cerr << "verify-chain: " << agreeing << '/' << records.size() << " agree\n";
  return agreeing == records.size() ? 0 : 1;
}

int run_bench(const std::vector<int>& sizes, int reps, bool time_solves, int cap,
              std::uint32_t seed, const std::string& out, const wsp::SolveConfig& cfg) {
  for (int n : sizes)
    if (n < 16) wsp::fail(wsp::Errc::validation, "bench sizes must be at least 16");
  const auto records = wsp::run_bench(sizes, reps, time_solves, cap, seed, cfg);
  const auto csv = wsp::bench_csv(records);
  if (out.empty())
    std::cout << csv;
  else
    write_file(out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workflow satisfiability engine and hard-instance forge"};
  app.require_subcommand(1);

  wsp::SolveConfig cfg;

  auto* generate = app.add_subcommand("generate", "reduce a source instance (or emit random 3-SAT)");
  std::string gen_from;
  bool gen_random3 = false;
  int gen_n = 10, gen_m = 40;
  std::uint32_t gen_seed = 1;
  std::string gen_d;
  std::string gen_out;
  generate->add_option("--from", gen_from, "source file (.cnf or set-splitting)");
  generate->add_flag("--random-3sat", gen_random3, "generate a random 3-SAT formula instead");
  generate->add_option("--n", gen_n, "random 3-SAT: variable count");
  generate->add_option("--m", gen_m, "random 3-SAT: clause count");
  generate->add_option("--seed", gen_seed, "random 3-SAT: seed");
  generate->add_option("--d", gen_d, "CSP domain size: a power of two, or 'auto'");
  generate->add_option("--out", gen_out, "output path stem (defaults to the source path)");

  auto* solve = app.add_subcommand("solve", "solve a wsp/csp/cnf/ss instance file");
  std::string solve_path;
  std::string solve_algorithm = "auto";
  solve->add_option("instance", solve_path, "instance file")->required();
  solve->add_option("--algorithm", solve_algorithm, "brute | pattern | auto")
      ->check(CLI::IsMember({"brute", "pattern", "auto"}));
  solve->add_option("--max-plans", cfg.max_brute_plans, "brute-force plan budget (n^k cap)");
  solve->add_option("--max-nodes", cfg.max_pattern_nodes, "pattern search node budget");

  auto* verify = app.add_subcommand("verify-chain", "cross-verify the reduction chain on a corpus");
  std::string verify_corpus;
  std::vector<int> verify_domains{2, 4};
  std::string verify_out;
  verify->add_option("--corpus", verify_corpus, "directory of .cnf files")->required();
  verify->add_option("--d", verify_domains, "domain sizes to test")->delimiter(',');
  verify->add_option("--out", verify_out, "CSV path (stdout if omitted)");

  auto* bench = app.add_subcommand("bench", "emit the reduction size-trend table");
  std::vector<int> bench_sizes{256, 1024, 4096};
  int bench_reps = 3;
  bool bench_time = false;
  int bench_cap = 14;
  std::uint32_t bench_seed = 1;
  std::string bench_out;
  bench->add_option("--n", bench_sizes, "source formula sizes")->delimiter(',');
  bench->add_option("--reps", bench_reps, "repetitions per timed solve (median reported)");
  bench->add_flag("--time-solves", bench_time, "also time the pattern solver on truncated instances");
  bench->add_option("--cap", bench_cap, "step cap for timed solves");
  bench->add_option("--seed", bench_seed, "seed for the timed sub-instances");
  bench->add_option("--out", bench_out, "CSV path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return run_generate(gen_from, gen_random3, gen_n, gen_m, gen_seed, gen_d, gen_out);
    if (solve->parsed()) return run_solve(solve_path, solve_algorithm, cfg);
    if (verify->parsed()) return run_verify_chain(verify_corpus, verify_domains, verify_out, cfg);
    if (bench->parsed())
      return run_bench(bench_sizes, bench_reps, bench_time, bench_cap, bench_seed, bench_out, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
