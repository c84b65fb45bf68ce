#pragma once

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "capradii/core.hpp"
#include "capradii/generators.hpp"

namespace capradii {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

namespace detail {

// Whitespace tokenizer that remembers the line each token came from.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string tok;
    while (true) {
      if (pos_ >= line_buf_.size()) {
        if (!std::getline(in_, line_buf_)) throw ParseError(line_, std::string("expected ") + what);
        ++line_;
        pos_ = 0;
        continue;
      }
      size_t start = line_buf_.find_first_not_of(" \t\r", pos_);
      if (start == std::string::npos) {
        pos_ = line_buf_.size();
        continue;
      }
      size_t end = line_buf_.find_first_of(" \t\r", start);
      if (end == std::string::npos) end = line_buf_.size();
      tok = line_buf_.substr(start, end - start);
      pos_ = end;
      return tok;
    }
  }

  long long next_int(const char* what) {
    std::string tok = next(what);
    try {
      size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(line_, std::string("expected integer for ") + what + ", got '" + tok + "'");
    }
  }

  double next_real(const char* what) {
    std::string tok = next(what);
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(line_, std::string("expected number for ") + what + ", got '" + tok + "'");
    }
  }

  int line() const { return line_; }

 private:
  std::istream& in_;
  std::string line_buf_;
  size_t pos_ = 0;
  int line_ = 0;
};

}  // namespace detail

// Instance format (versioned, textual):
//   capradii-instance v1
//   n k p             (p is "L1" or a real >= 1)
//   n capacities
//   matrix            followed by n rows of n reals, or
//   euclidean D       followed by n rows of D coordinates
inline Instance read_instance(std::istream& in) {
  detail::TokenReader tr(in);
  if (tr.next("format header") != "capradii-instance")
    throw ParseError(tr.line(), "not a capradii-instance file");
  if (tr.next("format version") != "v1") throw ParseError(tr.line(), "unsupported version");
  long long n = tr.next_int("n");
  long long k = tr.next_int("k");
  std::string ptok = tr.next("p");
  if (n < 1) throw ParseError(tr.line(), "n must be at least 1");
  if (k < 1 || k > n) throw ParseError(tr.line(), "k must lie in [1, n]");

  Instance inst;
  if (ptok == "L1") {
    inst.norm = PNorm::l1();
  } else {
    try {
      inst.norm = PNorm::lp(std::stod(ptok));
    } catch (const std::exception&) {
      throw ParseError(tr.line(), "p must be 'L1' or a real >= 1, got '" + ptok + "'");
    }
  }
  inst.k = static_cast<int>(k);
  inst.capacities.resize(n);
  for (long long i = 0; i < n; ++i) inst.capacities[i] = tr.next_int("capacity");

  std::string mode = tr.next("metric mode");
  if (mode == "matrix") {
    std::vector<double> d(static_cast<size_t>(n) * n);
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < n; ++j) d[i * n + j] = tr.next_real("distance");
    inst.metric = MetricSpace(static_cast<int>(n), std::move(d));
  } else if (mode == "euclidean") {
    long long dim = tr.next_int("dimension");
    if (dim < 1) throw ParseError(tr.line(), "dimension must be at least 1");
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (long long i = 0; i < n; ++i)
      for (long long t = 0; t < dim; ++t) pts[i][t] = tr.next_real("coordinate");
    inst.metric = MetricSpace::from_points(pts);
  } else {
    throw ParseError(tr.line(), "metric mode must be 'matrix' or 'euclidean'");
  }
  return inst;
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return read_instance(in);
}

inline void write_instance_matrix(std::ostream& out, const Instance& inst) {
  out << "capradii-instance v1\n";
  out << inst.n() << " " << inst.k << " " << inst.norm.to_string() << "\n";
  for (int i = 0; i < inst.n(); ++i) out << inst.capacities[i] << (i + 1 == inst.n() ? "\n" : " ");
  out << "matrix\n";
  out << std::setprecision(17);
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.n(); ++j)
      out << inst.metric.dist(i, j) << (j + 1 == inst.n() ? "\n" : " ");
}

inline void write_instance_euclidean(std::ostream& out, const std::vector<std::vector<double>>& pts,
                                     const std::vector<long long>& caps, int k, PNorm norm) {
  if (pts.empty()) throw std::invalid_argument("cannot write an instance with no points");
  out << "capradii-instance v1\n";
  out << pts.size() << " " << k << " " << norm.to_string() << "\n";
  for (size_t i = 0; i < caps.size(); ++i) out << caps[i] << (i + 1 == caps.size() ? "\n" : " ");
  out << "euclidean " << pts.at(0).size() << "\n";
  out << std::setprecision(17);
  for (const auto& p : pts) {
    for (size_t t = 0; t < p.size(); ++t) out << p[t] << (t + 1 == p.size() ? "\n" : " ");
  }
}

// Solution format: header, then k lines "center radius member-count ids...".
inline void write_solution(std::ostream& out, const Clustering& sol) {
  out << "capradii-solution v1\n";
  out << std::setprecision(17);
  for (int j = 0; j < sol.k(); ++j) {
    out << sol.centers[j] << " " << sol.nominal_radii[j] << " " << sol.members[j].size();
    for (int p : sol.members[j]) out << " " << p;
    out << "\n";
  }
}

inline Clustering read_solution(std::istream& in) {
  detail::TokenReader tr(in);
  if (tr.next("format header") != "capradii-solution")
    throw ParseError(tr.line(), "not a capradii-solution file");
  if (tr.next("format version") != "v1") throw ParseError(tr.line(), "unsupported version");
  Clustering sol;
  while (true) {
    std::string tok;
    try {
      tok = tr.next("center");
    } catch (const ParseError&) {
      break;  // end of file
    }
    long long center;
    try {
      center = std::stoll(tok);
    } catch (const std::exception&) {
      throw ParseError(tr.line(), "expected center id, got '" + tok + "'");
    }
    double radius = tr.next_real("radius");
    long long count = tr.next_int("member count");
    if (count < 0) throw ParseError(tr.line(), "negative member count");
    std::vector<int> members(count);
    for (long long i = 0; i < count; ++i) members[i] = static_cast<int>(tr.next_int("member id"));
    sol.centers.push_back(static_cast<int>(center));
    sol.nominal_radii.push_back(radius);
    sol.members.push_back(std::move(members));
  }
  if (sol.k() == 0) throw ParseError(tr.line(), "solution has no clusters");
  return sol;
}

inline Clustering read_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  return read_solution(in);
}

// Graph format: first line "n m", then m lines "u v" (0-indexed).
inline VcGraph read_vc_graph(std::istream& in) {
  detail::TokenReader tr(in);
  long long n = tr.next_int("vertex count");
  long long m = tr.next_int("edge count");
  if (n < 1) throw ParseError(tr.line(), "vertex count must be positive");
  if (m < 0) throw ParseError(tr.line(), "edge count must be non-negative");
  std::vector<std::pair<int, int>> edges;
  for (long long e = 0; e < m; ++e) {
    int u = static_cast<int>(tr.next_int("edge endpoint"));
    int v = static_cast<int>(tr.next_int("edge endpoint"));
    edges.push_back({u, v});
  }
  try {
    return VcGraph::make(static_cast<int>(n), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(tr.line(), e.what());
  }
}

inline VcGraph read_vc_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_vc_graph(in);
}

inline void write_reduction_layout(std::ostream& out, const ReductionLayout& lay) {
  out << "capradii-vc-layout v1\n";
  out << lay.n_vertices << " " << lay.n_edges << " " << lay.degree << " " << lay.k << "\n";
  out << "p_star " << lay.p_star << "\n";
  for (int v = 0; v < lay.n_vertices; ++v) {
    out << "p_v " << v << " " << lay.p_v[v] << " q_v";
    for (int w : lay.q_v[v]) out << " " << w;
    out << "\n";
  }
  for (int e = 0; e < lay.n_edges; ++e) out << "p_e " << e << " " << lay.p_e[e] << "\n";
}

}  // namespace capradii
