// capradii: capacitated sum-of-radii clustering toolbox.
//
// Subcommands: solve (general capacities), solve-uniform, oracle, gen,
// profiles, check, bench. Exit codes: 0 ok, 1 violation or no solution,
// 2 usage/format errors.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "capradii/bench.hpp"
#include "capradii/core.hpp"
#include "capradii/generators.hpp"
#include "capradii/io.hpp"
#include "capradii/nonuniform.hpp"
#include "capradii/oracle.hpp"
#include "capradii/profiles.hpp"
#include "capradii/uniform.hpp"

namespace {

using namespace capradii;

Instance load_instance(const std::string& path, const std::string& p_flag) {
  Instance inst = read_instance_file(path);
  if (!p_flag.empty()) {
    inst.norm = (p_flag == "L1") ? PNorm::l1() : PNorm::lp(std::stod(p_flag));
  }
  ValidationReport rep = validate_instance(inst);
  if (!rep.ok()) throw std::runtime_error("invalid instance:\n" + rep.to_string());
  return inst;
}

void write_solution_file(const std::string& path, const Clustering& sol) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_solution(out, sol);
}

int report_solve(const Instance& inst, const SolveResult& res, const std::string& out_path) {
  std::cout << "profiles " << res.stats.profile_count << "\n";
  std::cout << "iterations " << res.stats.iterations << "\n";
  std::cout << "successes " << res.stats.successes << "\n";
  std::cout << "passes " << res.stats.passes << "\n";
  if (!res.best) {
    std::cout << "no solution found\n";
    return 1;
  }
  std::cout << std::setprecision(12);
  std::cout << "best-nominal " << res.stats.best_nominal << "\n";
  std::cout << "best-tightened " << res.stats.best_tightened << "\n";
  ValidationReport rep = validate_solution(inst, *res.best);
  if (!rep.ok()) {
    std::cout << "solution INVALID:\n" << rep.to_string();
    return 1;
  }
  if (!out_path.empty()) write_solution_file(out_path, *res.best);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacitated sum-of-radii clustering"};
  app.require_subcommand(1);

  // ---- solve (non-uniform capacities) ----
  std::string in_path, out_path, p_flag;
  double eps = 0.1, alpha = alpha_star(), ceiling = 1e8;
  unsigned long long budget = 1000;
  uint64_t seed = 0;

  auto* solve = app.add_subcommand("solve", "randomized solver for general capacities");
  solve->add_option("--in", in_path, "instance file")->required();
  solve->add_option("--out", out_path, "solution output file");
  solve->add_option("--eps", eps, "radii-profile accuracy");
  solve->add_option("--alpha", alpha, "radius-arm parameter in (0,1]");
  solve->add_option("--budget", budget, "total randomized iterations");
  solve->add_option("--seed", seed, "random seed");
  solve->add_option("--p", p_flag, "objective override: L1 or a real >= 1");

  auto* solveu = app.add_subcommand("solve-uniform", "randomized solver for uniform capacities");
  solveu->add_option("--in", in_path, "instance file")->required();
  solveu->add_option("--out", out_path, "solution output file");
  solveu->add_option("--eps", eps, "radii-profile accuracy");
  solveu->add_option("--budget", budget, "total randomized iterations");
  solveu->add_option("--seed", seed, "random seed");
  solveu->add_option("--p", p_flag, "objective override: L1 or a real >= 1");

  auto* oracle_cmd = app.add_subcommand("oracle", "exact brute-force optimum (desk scale)");
  oracle_cmd->add_option("--in", in_path, "instance file")->required();
  oracle_cmd->add_option("--out", out_path, "witness solution output file");
  oracle_cmd->add_option("--p", p_flag, "objective override: L1 or a real >= 1");
  oracle_cmd->add_option("--ceiling", ceiling, "max feasibility-check estimate before refusing");

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  std::string graph_path, layout_path;
  auto* gen_vc = gen->add_subcommand("vc", "vertex-cover hardness reduction");
  gen_vc->add_option("--graph", graph_path, "graph file: 'n m' then m lines 'u v'")->required();
  gen_vc->add_option("--out", out_path, "instance output file")->required();
  gen_vc->add_option("--layout", layout_path, "layout output file (default OUT.layout)");

  std::string centers_arg, sizes_arg, caps_arg = "const:1";
  double spread = 0.0;
  int gen_k = 1;
  uint64_t gen_seed = 0;
  auto* gen_blobs_cmd = gen->add_subcommand("blobs", "random Euclidean blob family");
  gen_blobs_cmd->add_option("--centers", centers_arg, "blob centers, e.g. 0,0|12,0")->required();
  gen_blobs_cmd->add_option("--sizes", sizes_arg, "points per blob, e.g. 8,8")->required();
  gen_blobs_cmd->add_option("--spread", spread, "blob radius");
  gen_blobs_cmd->add_option("--caps", caps_arg, "const:U or uniform:lo:hi (rescaled feasible)");
  gen_blobs_cmd->add_option("--k", gen_k, "cluster count")->required();
  gen_blobs_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_blobs_cmd->add_option("--p", p_flag, "objective: L1 or a real >= 1");
  gen_blobs_cmd->add_option("--out", out_path, "instance output file")->required();

  // ---- profiles ----
  bool count_only = false;
  auto* profiles_cmd = app.add_subcommand("profiles", "enumerate candidate radii profiles");
  profiles_cmd->add_option("--in", in_path, "instance file")->required();
  profiles_cmd->add_option("--eps", eps, "radii-profile accuracy");
  profiles_cmd->add_flag("--count", count_only, "print the profile count without materializing");

  // ---- check ----
  std::string sol_path;
  auto* check = app.add_subcommand("check", "validate a solution file against an instance");
  check->add_option("--instance", in_path, "instance file")->required();
  check->add_option("--solution", sol_path, "solution file")->required();

  // ---- bench ----
  std::string config_path;
  int jobs = 2;
  auto* bench = app.add_subcommand("bench", "run a benchmark sweep, emit CSV");
  bench->add_option("--config", config_path, "bench config file")->required();
  bench->add_option("--out", out_path, "CSV output file")->required();
  bench->add_option("--jobs", jobs, "worker pool size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      Instance inst = load_instance(in_path, p_flag);
      SolveResult res = run_nonuniform(inst, eps, alpha, budget, seed);
      return report_solve(inst, res, out_path);
    }
    if (solveu->parsed()) {
      Instance inst = load_instance(in_path, p_flag);
      SolveResult res = run_uniform(inst, eps, budget, seed);
      return report_solve(inst, res, out_path);
    }
    if (oracle_cmd->parsed()) {
      Instance inst = load_instance(in_path, p_flag);
      OracleResult res = optimal(inst, ceiling);
      std::cout << std::setprecision(12) << "opt-cost " << res.opt_cost << "\n";
      std::cout << "opt-radii";
      for (double r : res.optimal_radii) std::cout << " " << r;
      std::cout << "\n";
      if (!out_path.empty()) write_solution_file(out_path, res.witness);
      return 0;
    }
    if (gen_vc->parsed()) {
      VcGraph g = read_vc_graph_file(graph_path);
      auto [inst, lay] = reduce_vc(g);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      write_instance_matrix(out, inst);
      std::string lp = layout_path.empty() ? out_path + ".layout" : layout_path;
      std::ofstream lout(lp);
      if (!lout) throw std::runtime_error("cannot write " + lp);
      write_reduction_layout(lout, lay);
      std::cout << "points " << inst.n() << " k " << inst.k << " degree " << lay.degree << "\n";
      return 0;
    }
    if (gen_blobs_cmd->parsed()) {
      std::vector<std::vector<double>> centers;
      for (const auto& c : capradii::detail::split(centers_arg, '|')) {
        std::vector<double> coord;
        for (const auto& x : capradii::detail::split(c, ',')) coord.push_back(std::stod(x));
        centers.push_back(coord);
      }
      std::vector<int> sizes;
      for (const auto& s : capradii::detail::split(sizes_arg, ',')) sizes.push_back(std::stoi(s));
      auto parts = capradii::detail::split(caps_arg, ':');
      CapacityLaw law = CapacityLaw::constant(1);
      if (parts.size() == 2 && parts[0] == "const") {
        law = CapacityLaw::constant(std::stoll(parts[1]));
      } else if (parts.size() == 3 && parts[0] == "uniform") {
        law = CapacityLaw::uniform_range(std::stoll(parts[1]), std::stoll(parts[2]));
      } else {
        throw std::runtime_error("--caps must be const:U or uniform:lo:hi");
      }
      PNorm norm = p_flag.empty() || p_flag == "L1" ? PNorm::l1() : PNorm::lp(std::stod(p_flag));
      BlobInstance blob = gen_blobs(centers, sizes, spread, law, gen_k, gen_seed, norm);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      write_instance_euclidean(out, blob.points, blob.capacities, gen_k, norm);
      std::cout << "points " << blob.points.size() << " k " << gen_k << "\n";
      return 0;
    }
    if (profiles_cmd->parsed()) {
      Instance inst = load_instance(in_path, "");
      ProfileEnumerator en(inst, eps);
      if (count_only) {
        std::cout << en.count() << "\n";
      } else {
        std::cout << std::setprecision(17);
        en.for_each([&](const std::vector<double>& t) {
          for (size_t i = 0; i < t.size(); ++i) std::cout << (i ? " " : "") << t[i];
          std::cout << "\n";
        });
      }
      return 0;
    }
    if (check->parsed()) {
      Instance inst = read_instance_file(in_path);
      Clustering sol = read_solution_file(sol_path);
      ValidationReport rep = validate_solution(inst, sol);
      if (!rep.ok()) {
        std::cout << "INVALID\n" << rep.to_string();
        return 1;
      }
      std::cout << std::setprecision(12);
      std::cout << "valid\n";
      std::cout << "nominal-cost " << evaluate(inst, sol, false) << "\n";
      std::cout << "tightened-cost " << evaluate(inst, sol, true) << "\n";
      return 0;
    }
    if (bench->parsed()) {
      std::ifstream cfg(config_path);
      if (!cfg) throw std::runtime_error("cannot open config: " + config_path);
      std::vector<BenchCell> cells = parse_bench_config(cfg);
      BenchReport report = run_bench(cells, jobs);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      write_bench_csv(out, report);
      for (const auto& row : report.rows) {
        if (row.validation_failed) std::cout << row.id << ": VALIDATION FAILED\n";
        if (row.bound_breached) std::cout << row.id << ": ratio bound breached\n";
      }
      return report.clean() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
