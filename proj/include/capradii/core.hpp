#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace capradii {

// Objective norm over the k cluster radii: plain sum (L1) or (sum r^p)^(1/p).
struct PNorm {
  bool is_l1 = true;
  double p = 1.0;

  static PNorm l1() { return PNorm{true, 1.0}; }
  static PNorm lp(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("p norm requires p >= 1");
    return PNorm{false, p};
  }
  std::string to_string() const {
    if (is_l1) return "L1";
    std::ostringstream os;
    os << p;
    return os.str();
  }
};

inline double aggregate_radii(const std::vector<double>& radii, PNorm norm) {
  if (norm.is_l1) {
    double s = 0.0;
    for (double r : radii) s += r;
    return s;
  }
  double s = 0.0;
  for (double r : radii) s += std::pow(r, norm.p);
  return std::pow(s, 1.0 / norm.p);
}

// Dense symmetric distance matrix over point ids 0..n-1.
class MetricSpace {
 public:
  MetricSpace() = default;

  MetricSpace(int n, std::vector<double> dist) : n_(n), d_(std::move(dist)) {
    if (n < 0 || d_.size() != static_cast<size_t>(n) * n)
      throw std::invalid_argument("metric: matrix size does not match n");
  }

  // Euclidean inputs are converted to the dense matrix on ingestion.
  static MetricSpace from_points(const std::vector<std::vector<double>>& pts) {
    int n = static_cast<int>(pts.size());
    std::vector<double> d(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (pts[i].size() != pts[j].size())
          throw std::invalid_argument("metric: inconsistent point dimension");
        double s = 0.0;
        for (size_t t = 0; t < pts[i].size(); ++t) {
          double diff = pts[i][t] - pts[j][t];
          s += diff * diff;
        }
        double v = std::sqrt(s);
        d[static_cast<size_t>(i) * n + j] = v;
        d[static_cast<size_t>(j) * n + i] = v;
      }
    }
    return MetricSpace(n, std::move(d));
  }

  int size() const { return n_; }
  double dist(int a, int b) const { return d_[static_cast<size_t>(a) * n_ + b]; }
  const std::vector<double>& raw() const { return d_; }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

struct Instance {
  MetricSpace metric;
  std::vector<long long> capacities;  // U_p per point
  int k = 1;
  PNorm norm = PNorm::l1();

  int n() const { return metric.size(); }
};

struct Ball {
  int center = -1;
  double radius = 0.0;
};

// k (center, member-set, nominal radius) triples. Member sets partition [n];
// empty clusters are legal and a center need not belong to its own cluster.
struct Clustering {
  std::vector<int> centers;
  std::vector<std::vector<int>> members;
  std::vector<double> nominal_radii;

  int k() const { return static_cast<int>(centers.size()); }
};

struct ValidationReport {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
  std::string to_string() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& line : issues) {
      s += line;
      s += '\n';
    }
    return s;
  }
};

namespace detail {
inline std::string fmt_triple(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}
}  // namespace detail

// Report-style checks: metric axioms plus top-k capacity feasibility.
inline ValidationReport validate_instance(const Instance& inst) {
  ValidationReport rep;
  const int n = inst.n();
  constexpr size_t kMaxIssues = 32;
  if (n < 1) rep.issues.push_back("instance has no points");
  if (inst.k < 1 || inst.k > n) {
    std::ostringstream os;
    os << "k=" << inst.k << " outside [1," << n << "]";
    rep.issues.push_back(os.str());
  }
  if (inst.capacities.size() != static_cast<size_t>(n))
    rep.issues.push_back("capacity vector length differs from n");
  for (int i = 0; i < n && i < static_cast<int>(inst.capacities.size()); ++i) {
    if (inst.capacities[i] < 0) {
      std::ostringstream os;
      os << "negative capacity at point " << i;
      rep.issues.push_back(os.str());
    }
  }
  if (!inst.norm.is_l1 && !(inst.norm.p >= 1.0))
    rep.issues.push_back("p norm below 1");

  for (int i = 0; i < n && rep.issues.size() < kMaxIssues; ++i) {
    if (inst.metric.dist(i, i) != 0.0) {
      std::ostringstream os;
      os << "nonzero diagonal at point " << i;
      rep.issues.push_back(os.str());
    }
  }
  for (int a = 0; a < n && rep.issues.size() < kMaxIssues; ++a) {
    for (int b = a + 1; b < n; ++b) {
      double ab = inst.metric.dist(a, b);
      if (ab < 0.0) {
        rep.issues.push_back("negative distance " + detail::fmt_triple(a, b, b));
      }
      if (ab != inst.metric.dist(b, a)) {
        std::ostringstream os;
        os << "asymmetric distance between " << a << " and " << b;
        rep.issues.push_back(os.str());
        if (rep.issues.size() >= kMaxIssues) break;
      }
    }
  }
  for (int a = 0; a < n && rep.issues.size() < kMaxIssues; ++a)
    for (int b = 0; b < n && rep.issues.size() < kMaxIssues; ++b) {
      if (b == a) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (inst.metric.dist(a, c) > inst.metric.dist(a, b) + inst.metric.dist(b, c)) {
          rep.issues.push_back("triangle inequality violated at " +
                               detail::fmt_triple(a, b, c));
          if (rep.issues.size() >= kMaxIssues) break;
        }
      }
    }

  if (inst.capacities.size() == static_cast<size_t>(n) && inst.k >= 1 &&
      inst.k <= n) {
    std::vector<long long> caps = inst.capacities;
    std::sort(caps.begin(), caps.end(), std::greater<long long>());
    long long top = 0;
    for (int j = 0; j < inst.k; ++j) top += caps[j];
    if (top < n) {
      std::ostringstream os;
      os << "infeasible: top-" << inst.k << " capacity " << top << " < " << n;
      rep.issues.push_back(os.str());
    }
  }
  return rep;
}

// Checks the four Clustering invariants against the instance.
inline ValidationReport validate_solution(const Instance& inst, const Clustering& sol) {
  ValidationReport rep;
  const int n = inst.n();
  const int k = sol.k();
  if (k != inst.k) {
    std::ostringstream os;
    os << "solution has " << k << " clusters, instance wants " << inst.k;
    rep.issues.push_back(os.str());
  }
  if (sol.members.size() != static_cast<size_t>(k) ||
      sol.nominal_radii.size() != static_cast<size_t>(k)) {
    rep.issues.push_back("centers/members/radii lengths differ");
    return rep;
  }
  std::vector<char> seen_center(n, 0);
  for (int j = 0; j < k; ++j) {
    int c = sol.centers[j];
    if (c < 0 || c >= n) {
      std::ostringstream os;
      os << "center id out of range at cluster " << j;
      rep.issues.push_back(os.str());
      return rep;
    }
    if (seen_center[c]) {
      std::ostringstream os;
      os << "centers not distinct: point " << c << " reused at cluster " << j;
      rep.issues.push_back(os.str());
    }
    seen_center[c] = 1;
    if (sol.nominal_radii[j] < 0.0) {
      std::ostringstream os;
      os << "negative radius at cluster " << j;
      rep.issues.push_back(os.str());
    }
  }
  std::vector<int> owner(n, -1);
  for (int j = 0; j < k; ++j) {
    for (int p : sol.members[j]) {
      if (p < 0 || p >= n) {
        std::ostringstream os;
        os << "member id out of range in cluster " << j;
        rep.issues.push_back(os.str());
        continue;
      }
      if (owner[p] != -1) {
        std::ostringstream os;
        os << "point " << p << " assigned to clusters " << owner[p] << " and " << j;
        rep.issues.push_back(os.str());
      }
      owner[p] = j;
    }
  }
  for (int p = 0; p < n; ++p)
    if (owner[p] == -1) {
      std::ostringstream os;
      os << "point " << p << " unassigned";
      rep.issues.push_back(os.str());
    }
  for (int j = 0; j < k; ++j) {
    int c = sol.centers[j];
    if (c < 0 || c >= n) continue;
    if (static_cast<long long>(sol.members[j].size()) > inst.capacities[c]) {
      std::ostringstream os;
      os << "capacity exceeded at " << j << ": " << sol.members[j].size() << " > "
         << inst.capacities[c];
      rep.issues.push_back(os.str());
    }
    for (int p : sol.members[j]) {
      if (p < 0 || p >= n) continue;
      if (inst.metric.dist(p, c) > sol.nominal_radii[j]) {
        std::ostringstream os;
        os << "point " << p << " at distance " << inst.metric.dist(p, c)
           << " exceeds radius " << sol.nominal_radii[j] << " of cluster " << j;
        rep.issues.push_back(os.str());
        break;
      }
    }
  }
  return rep;
}

// Actual per-cluster max member distances (0 for empty clusters).
inline std::vector<double> tightened_radii(const Instance& inst, const Clustering& sol) {
  std::vector<double> out(sol.k(), 0.0);
  for (int j = 0; j < sol.k(); ++j) {
    double m = 0.0;
    for (int p : sol.members[j]) m = std::max(m, inst.metric.dist(p, sol.centers[j]));
    out[j] = m;
  }
  return out;
}

// Objective value; with tighten, nominal radii are replaced by the actual
// max member distances before aggregation.
inline double evaluate(const Instance& inst, const Clustering& sol, bool tighten) {
  ValidationReport rep = validate_solution(inst, sol);
  if (!rep.ok()) throw std::invalid_argument("invalid solution: " + rep.issues.front());
  std::vector<double> radii = tighten ? tightened_radii(inst, sol) : sol.nominal_radii;
  return aggregate_radii(radii, inst.norm);
}

}  // namespace capradii
