#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "capradii/core.hpp"
#include "capradii/flow.hpp"

namespace capradii {

struct OracleResult {
  double opt_cost = 0.0;
  Clustering witness;
  std::vector<double> optimal_radii;  // tightened, in witness center order
};

inline std::optional<std::vector<int>> assignment_for(const Instance& inst,
                                                      const std::vector<int>& centers,
                                                      const std::vector<double>& radii) {
  const int n = inst.n();
  const int k = static_cast<int>(centers.size());
  AssignmentProblem ap;
  ap.point_count = n;
  ap.sink_count = k;
  ap.admissible.assign(n, {});
  ap.sink_caps.resize(k);
  for (int j = 0; j < k; ++j) ap.sink_caps[j] = inst.capacities[centers[j]];
  for (int p = 0; p < n; ++p)
    for (int j = 0; j < k; ++j)
      if (inst.metric.dist(p, centers[j]) <= radii[j]) ap.admissible[p].push_back(j);
  return feasible_assignment(ap);
}

// True iff every point can be assigned to a center within the given radius
// while respecting the center capacities.
inline bool feasible_with(const Instance& inst, const std::vector<int>& centers,
                          const std::vector<double>& radii) {
  if (centers.size() != radii.size())
    throw std::invalid_argument("feasible_with: centers/radii length mismatch");
  return assignment_for(inst, centers, radii).has_value();
}

namespace detail {

inline double binomial_estimate(int n, int r) {
  double v = 1.0;
  for (int i = 0; i < r; ++i) {
    v *= static_cast<double>(n - i) / (i + 1);
    if (v > 1e30) return 1e30;
  }
  return v;
}

}  // namespace detail

// Upper estimate on the number of feasibility checks optimal() may run.
inline double oracle_search_estimate(const Instance& inst) {
  const int n = inst.n();
  int pos = 0;
  for (long long c : inst.capacities)
    if (c > 0) ++pos;
  const int m = std::min(inst.k, pos);
  if (m == 0) return 1.0;
  size_t max_distinct = 1;
  for (int c = 0; c < n; ++c) {
    if (inst.capacities[c] <= 0) continue;
    std::vector<double> d(n);
    for (int p = 0; p < n; ++p) d[p] = inst.metric.dist(c, p);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    max_distinct = std::max(max_distinct, d.size());
  }
  double per_set = 1.0;
  for (int i = 0; i + 1 < m; ++i) per_set *= static_cast<double>(max_distinct);
  per_set *= std::floor(std::log2(static_cast<double>(max_distinct))) + 2.0;
  double est = detail::binomial_estimate(pos, m) * per_set;
  return std::min(est, 1e30);
}

// Exhaustive optimum: enumerates center sets over positive-capacity points
// (padding with zero-capacity points as radius-0 empty clusters) and, per
// center, radii from that center's distance multiset plus 0. Feasibility is
// decided by the assignment flow; exact, not heuristic.
inline OracleResult optimal(const Instance& inst, double ceiling = 1e8) {
  ValidationReport rep = validate_instance(inst);
  if (!rep.ok()) throw std::runtime_error("oracle: invalid instance: " + rep.issues.front());
  double est = oracle_search_estimate(inst);
  if (est > ceiling) {
    std::ostringstream os;
    os << "oracle: search estimate " << est << " exceeds ceiling " << ceiling;
    throw std::runtime_error(os.str());
  }

  const int n = inst.n();
  const int k = inst.k;
  std::vector<int> pos_points, zero_points;
  for (int p = 0; p < n; ++p)
    (inst.capacities[p] > 0 ? pos_points : zero_points).push_back(p);
  const int m = std::min(k, static_cast<int>(pos_points.size()));

  // Per-candidate-center sorted unique radii.
  std::vector<std::vector<double>> radii_of(n);
  for (int c : pos_points) {
    std::vector<double> d(n);
    for (int p = 0; p < n; ++p) d[p] = inst.metric.dist(c, p);
    d.push_back(0.0);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    radii_of[c] = std::move(d);
  }

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<int> best_centers;
  std::vector<double> best_radii;

  std::vector<int> centers(k, -1);
  std::vector<double> radii(k, 0.0);

  auto cost_of = [&](const std::vector<double>& r) { return aggregate_radii(r, inst.norm); };

  // Chosen m-subset lives in centers[0..m); zero-capacity pads fill the rest.
  auto fill_pads = [&](std::vector<int>& cs) {
    for (int j = m; j < k; ++j) cs[j] = zero_points[j - m];
  };

  std::function<void(int)> search = [&](int depth) {
    const std::vector<double>& cand = radii_of[centers[depth]];
    if (depth == m - 1) {
      // Feasibility is monotone in the last radius: binary search the least
      // feasible candidate, if any.
      int lo = 0, hi = static_cast<int>(cand.size()) - 1;
      radii[depth] = cand[lo];
      if (cost_of(radii) >= best_cost) return;
      radii[depth] = cand[hi];
      if (!feasible_with(inst, centers, radii)) return;
      while (lo < hi) {
        int mid = (lo + hi) / 2;
        radii[depth] = cand[mid];
        if (feasible_with(inst, centers, radii))
          hi = mid;
        else
          lo = mid + 1;
      }
      radii[depth] = cand[lo];
      double c = cost_of(radii);
      if (c < best_cost) {
        best_cost = c;
        best_centers = centers;
        best_radii = radii;
      }
      return;
    }
    for (double r : cand) {
      radii[depth] = r;
      std::vector<double> partial = radii;
      for (int j = depth + 1; j < m; ++j) partial[j] = 0.0;
      if (cost_of(partial) >= best_cost) break;
      search(depth + 1);
    }
    radii[depth] = 0.0;
  };

  std::vector<int> subset(m);
  std::function<void(int, int)> choose = [&](int idx, int from) {
    if (idx == m) {
      for (int j = 0; j < m; ++j) centers[j] = pos_points[subset[j]];
      fill_pads(centers);
      for (int j = m; j < k; ++j) radii[j] = 0.0;
      search(0);
      return;
    }
    for (int i = from; i <= static_cast<int>(pos_points.size()) - (m - idx); ++i) {
      subset[idx] = i;
      choose(idx + 1, i + 1);
    }
  };
  choose(0, 0);

  if (!std::isfinite(best_cost))
    throw std::runtime_error("oracle: no feasible solution found");

  auto assign = assignment_for(inst, best_centers, best_radii);
  if (!assign) throw std::logic_error("oracle: winning radii lost feasibility");
  Clustering witness;
  witness.centers = best_centers;
  witness.members.assign(k, {});
  for (int p = 0; p < n; ++p) witness.members[(*assign)[p]].push_back(p);
  witness.nominal_radii = tightened_radii(inst, witness);

  OracleResult res;
  res.witness = witness;
  res.optimal_radii = witness.nominal_radii;
  res.opt_cost = aggregate_radii(res.optimal_radii, inst.norm);
  return res;
}

}  // namespace capradii
