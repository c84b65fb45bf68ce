#pragma once

#include <chrono>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "capradii/core.hpp"
#include "capradii/generators.hpp"
#include "capradii/io.hpp"
#include "capradii/nonuniform.hpp"
#include "capradii/oracle.hpp"
#include "capradii/uniform.hpp"

namespace capradii {

struct BenchCell {
  std::string id;
  std::string instance_path;  // exactly one of instance_path / gen_spec is set
  std::string gen_spec;
  std::string solver;  // "uniform" or "nonuniform"
  double eps = 0.1;
  double alpha = 0.0;  // nonuniform only; 0 means default alpha_star
  unsigned long long budget = 0;
  uint64_t seed = 0;
  std::optional<double> p_override;  // overrides the instance objective
  bool p_override_l1 = false;
  bool want_oracle = true;
  double ceiling = 1e8;
  std::optional<double> bound;
  int first_line = 0;
};

struct BenchRow {
  std::string id;
  std::string solver;
  double eps = 0.0;
  std::optional<double> alpha;
  unsigned long long budget = 0;
  uint64_t seed = 0;
  std::optional<double> best_cost;
  std::optional<double> oracle_cost;
  std::optional<double> ratio;
  unsigned long long iterations = 0;
  unsigned long long successes = 0;
  long long wall_ms = 0;
  bool validation_failed = false;
  bool bound_breached = false;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  bool clean() const {
    for (const auto& r : rows)
      if (r.validation_failed || r.bound_breached) return false;
    return true;
  }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

// Line-oriented config: `key = value` lines, cells separated by blank lines.
// Keys: id, instance, gen, solver, eps, alpha, budget, seed, p, oracle,
// ceiling, bound. Exactly one of instance/gen per cell.
inline std::vector<BenchCell> parse_bench_config(std::istream& in) {
  std::vector<BenchCell> cells;
  BenchCell cur;
  bool open = false;
  std::string line;
  int lineno = 0;

  auto flush = [&]() {
    if (!open) return;
    if (cur.solver != "uniform" && cur.solver != "nonuniform")
      throw ParseError(cur.first_line, "cell needs solver = uniform | nonuniform");
    if (cur.instance_path.empty() == cur.gen_spec.empty())
      throw ParseError(cur.first_line, "cell needs exactly one of instance/gen");
    if (cur.budget == 0) throw ParseError(cur.first_line, "cell needs a positive budget");
    if (cur.id.empty())
      cur.id = cur.instance_path.empty() ? "gen@" + std::to_string(cur.first_line) : cur.instance_path;
    cells.push_back(cur);
    cur = BenchCell{};
    open = false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
    std::string key = detail::trim(t.substr(0, eq));
    std::string val = detail::trim(t.substr(eq + 1));
    if (key.empty() || val.empty()) throw ParseError(lineno, "expected 'key = value'");
    if (!open) {
      open = true;
      cur.first_line = lineno;
    }
    try {
      if (key == "id") {
        cur.id = val;
      } else if (key == "instance") {
        cur.instance_path = val;
      } else if (key == "gen") {
        cur.gen_spec = val;
      } else if (key == "solver") {
        cur.solver = val;
      } else if (key == "eps") {
        cur.eps = std::stod(val);
      } else if (key == "alpha") {
        cur.alpha = std::stod(val);
      } else if (key == "budget") {
        cur.budget = std::stoull(val);
      } else if (key == "seed") {
        cur.seed = std::stoull(val);
      } else if (key == "p") {
        if (val == "L1") {
          cur.p_override_l1 = true;
        } else {
          cur.p_override = std::stod(val);
        }
      } else if (key == "oracle") {
        cur.want_oracle = (val == "on" || val == "true" || val == "1");
      } else if (key == "ceiling") {
        cur.ceiling = std::stod(val);
      } else if (key == "bound") {
        cur.bound = std::stod(val);
      } else {
        throw ParseError(lineno, "unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad value for key '" + key + "'");
    }
  }
  flush();
  return cells;
}

// gen specs: "blobs centers=x,y|x,y sizes=a,b spread=S caps=const:U|uniform:lo:hi
//             k=K gseed=N" or "vc graph=PATH".
inline Instance instantiate_gen_spec(const std::string& spec) {
  std::istringstream in(spec);
  std::string kind;
  in >> kind;
  std::string tok;
  if (kind == "vc") {
    std::string graph;
    while (in >> tok) {
      auto kv = detail::split(tok, '=');
      if (kv.size() == 2 && kv[0] == "graph") graph = kv[1];
    }
    if (graph.empty()) throw std::runtime_error("gen vc: missing graph=PATH");
    return reduce_vc(read_vc_graph_file(graph)).first;
  }
  if (kind != "blobs") throw std::runtime_error("unknown generator '" + kind + "'");

  std::vector<std::vector<double>> centers;
  std::vector<int> sizes;
  double spread = 0.0;
  CapacityLaw law = CapacityLaw::constant(1);
  int k = 1;
  uint64_t gseed = 0;
  PNorm norm = PNorm::l1();
  while (in >> tok) {
    auto kv = detail::split(tok, '=');
    if (kv.size() != 2) throw std::runtime_error("gen blobs: expected key=value, got '" + tok + "'");
    const std::string& key = kv[0];
    const std::string& val = kv[1];
    if (key == "centers") {
      for (const auto& c : detail::split(val, '|')) {
        std::vector<double> coord;
        for (const auto& x : detail::split(c, ',')) coord.push_back(std::stod(x));
        centers.push_back(coord);
      }
    } else if (key == "sizes") {
      for (const auto& s : detail::split(val, ',')) sizes.push_back(std::stoi(s));
    } else if (key == "spread") {
      spread = std::stod(val);
    } else if (key == "caps") {
      auto parts = detail::split(val, ':');
      if (parts.size() == 2 && parts[0] == "const") {
        law = CapacityLaw::constant(std::stoll(parts[1]));
      } else if (parts.size() == 3 && parts[0] == "uniform") {
        law = CapacityLaw::uniform_range(std::stoll(parts[1]), std::stoll(parts[2]));
      } else {
        throw std::runtime_error("gen blobs: caps must be const:U or uniform:lo:hi");
      }
    } else if (key == "k") {
      k = std::stoi(val);
    } else if (key == "gseed") {
      gseed = std::stoull(val);
    } else if (key == "p") {
      norm = (val == "L1") ? PNorm::l1() : PNorm::lp(std::stod(val));
    } else {
      throw std::runtime_error("gen blobs: unknown key '" + key + "'");
    }
  }
  return gen_blobs(centers, sizes, spread, law, k, gseed, norm).instance;
}

inline BenchRow run_bench_cell(const BenchCell& cell) {
  auto t0 = std::chrono::steady_clock::now();
  Instance inst = cell.instance_path.empty() ? instantiate_gen_spec(cell.gen_spec)
                                             : read_instance_file(cell.instance_path);
  if (cell.p_override_l1) inst.norm = PNorm::l1();
  if (cell.p_override) inst.norm = PNorm::lp(*cell.p_override);

  BenchRow row;
  row.id = cell.id;
  row.solver = cell.solver;
  row.eps = cell.eps;
  row.budget = cell.budget;
  row.seed = cell.seed;

  SolveResult res;
  if (cell.solver == "uniform") {
    res = run_uniform(inst, cell.eps, cell.budget, cell.seed);
  } else {
    double alpha = cell.alpha > 0.0 ? cell.alpha : alpha_star();
    row.alpha = alpha;
    res = run_nonuniform(inst, cell.eps, alpha, cell.budget, cell.seed);
  }
  row.iterations = res.stats.iterations;
  row.successes = res.stats.successes;
  row.validation_failed = res.stats.invalid_outputs > 0;
  if (res.stats.found) row.best_cost = res.stats.best_tightened;

  if (cell.want_oracle) {
    OracleResult opt = optimal(inst, cell.ceiling);
    row.oracle_cost = opt.opt_cost;
    if (row.best_cost) {
      row.ratio = *row.oracle_cost == 0.0 ? (*row.best_cost == 0.0 ? 1.0 : std::numeric_limits<double>::infinity())
                                          : *row.best_cost / *row.oracle_cost;
      if (cell.bound && *row.ratio > *cell.bound) row.bound_breached = true;
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return row;
}

// Cells run in a small worker pool; rows are assembled in config order.
inline BenchReport run_bench(const std::vector<BenchCell>& cells, int jobs) {
  BenchReport report;
  report.rows.resize(cells.size());
  if (jobs < 1) jobs = 1;
  size_t next = 0;
  while (next < cells.size()) {
    size_t batch = std::min(static_cast<size_t>(jobs), cells.size() - next);
    std::vector<std::future<BenchRow>> futs;
    for (size_t i = 0; i < batch; ++i)
      futs.push_back(std::async(std::launch::async, run_bench_cell, std::cref(cells[next + i])));
    for (size_t i = 0; i < batch; ++i) report.rows[next + i] = futs[i].get();
    next += batch;
  }
  return report;
}

inline void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "instance,solver,eps,alpha,budget,seed,best_cost,oracle_cost,ratio,iterations,"
         "successes,wall_ms\n";
  out << std::setprecision(12);
  for (const auto& r : report.rows) {
    out << r.id << "," << r.solver << "," << r.eps << ",";
    if (r.alpha) out << *r.alpha;
    out << "," << r.budget << "," << r.seed << ",";
    if (r.best_cost) out << *r.best_cost;
    out << ",";
    if (r.oracle_cost) out << *r.oracle_cost;
    out << ",";
    if (r.ratio) out << *r.ratio;
    out << "," << r.iterations << "," << r.successes << "," << r.wall_ms << "\n";
  }
}

}  // namespace capradii
