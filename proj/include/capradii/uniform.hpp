#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "capradii/core.hpp"
#include "capradii/flow.hpp"
#include "capradii/rng.hpp"
#include "capradii/solver_common.hpp"

namespace capradii {

// One ball handed back by Redistribute: a fresh center w, the points moved
// into it, and the large-cluster radius it was charged to.
struct RedistributeBall {
  int center = -1;
  std::vector<int> points;
  double radius = 0.0;
};

// Disjoint G_j <= caps_j inside the given balls, covering all points, found
// via the assignment flow; nullopt when the system is infeasible (including
// when the balls do not cover the point set).
inline std::optional<std::vector<std::vector<int>>> cover_groups(
    const MetricSpace& metric, const std::vector<int>& centers,
    const std::vector<double>& radii, const std::vector<long long>& caps) {
  const int n = metric.size();
  const int s = static_cast<int>(centers.size());
  AssignmentProblem ap;
  ap.point_count = n;
  ap.sink_count = s;
  ap.admissible.assign(n, {});
  ap.sink_caps = caps;
  for (int p = 0; p < n; ++p) {
    for (int j = 0; j < s; ++j)
      if (metric.dist(p, centers[j]) <= radii[j]) ap.admissible[p].push_back(j);
    if (ap.admissible[p].empty()) return std::nullopt;  // uncovered point
  }
  auto assign = feasible_assignment(ap);
  if (!assign) return std::nullopt;
  std::vector<std::vector<int>> groups(s);
  for (int p = 0; p < n; ++p) groups[(*assign)[p]].push_back(p);
  return groups;
}

// Offloads the excess of each oversized group into a ball whose radius is a
// distinct large-cluster radius. Tries every ordered sub-selection of
// large_radii (lexicographic over index tuples); a candidate center w is
// admissible for group i iff |B(w, r_sigma_i) ∩ G_i| >= gamma_U. The removal
// count is |G_i| - U, which restores feasibility exactly.
inline std::optional<std::vector<RedistributeBall>> redistribute(
    const MetricSpace& metric, const std::vector<std::vector<int>>& groups,
    const std::vector<int>& forbidden_centers, const std::vector<double>& large_radii,
    double gamma_U, long long U) {
  const int h = static_cast<int>(groups.size());
  if (h == 0) return std::vector<RedistributeBall>{};
  const int kl = static_cast<int>(large_radii.size());
  if (h > kl) return std::nullopt;

  const int n = metric.size();
  std::vector<char> forbidden(n, 0);
  for (int c : forbidden_centers) forbidden[c] = 1;
  std::vector<int> candidates;  // V_R = P minus chosen centers, ascending
  for (int p = 0; p < n; ++p)
    if (!forbidden[p]) candidates.push_back(p);

  std::vector<int> sigma(h, -1);
  std::vector<char> used(kl, 0);

  std::optional<std::vector<RedistributeBall>> result;

  auto try_sigma = [&]() -> bool {
    BipartiteGraph g;
    g.left_count = h;
    g.right_count = static_cast<int>(candidates.size());
    g.adjacency.assign(h, {});
    for (int i = 0; i < h; ++i) {
      double r = large_radii[sigma[i]];
      for (int w = 0; w < g.right_count; ++w) {
        int count = 0;
        for (int p : groups[i])
          if (metric.dist(candidates[w], p) <= r) ++count;
        if (static_cast<double>(count) >= gamma_U) g.adjacency[i].push_back(w);
      }
    }
    std::vector<int> match = max_matching(g);
    if (matching_size(match) != h) return false;
    std::vector<RedistributeBall> balls(h);
    for (int i = 0; i < h; ++i) {
      int w = candidates[match[i]];
      double r = large_radii[sigma[i]];
      long long removal = static_cast<long long>(groups[i].size()) - U;
      RedistributeBall ball;
      ball.center = w;
      ball.radius = r;
      for (int p : groups[i]) {
        if (static_cast<long long>(ball.points.size()) >= removal) break;
        if (metric.dist(w, p) <= r) ball.points.push_back(p);
      }
      if (static_cast<long long>(ball.points.size()) < removal) return false;
      balls[i] = std::move(ball);
    }
    result = std::move(balls);
    return true;
  };

  std::function<bool(int)> enumerate = [&](int depth) -> bool {
    if (depth == h) return try_sigma();
    for (int t = 0; t < kl; ++t) {
      if (used[t]) continue;
      used[t] = 1;
      sigma[depth] = t;
      if (enumerate(depth + 1)) return true;
      used[t] = 0;
    }
    return false;
  };
  enumerate(0);
  return result;
}

// One randomized iteration of the uniform-capacity algorithm. Returns the
// assembled clustering or nullopt on any failed guess. Nominal radii are
// 2r_j for plain cover balls, 2r_j + 2R_j for extended ones, and the charged
// large radius for each Redistribute ball; unused cluster slots become empty
// clusters of radius 0 at fresh centers.
inline std::optional<Clustering> uniform_iteration(const Instance& inst,
                                                   const std::vector<double>& profile,
                                                   int k_L_guess, long long U, Rng& rng) {
  const int n = inst.n();
  const int k = inst.k;
  if (static_cast<int>(profile.size()) != k)
    throw std::invalid_argument("uniform_iteration: profile length != k");
  if (k_L_guess < 0 || k_L_guess > k)
    throw std::invalid_argument("uniform_iteration: k_L_guess outside [0,k]");
  for (long long c : inst.capacities)
    if (c != U) throw std::invalid_argument("uniform_iteration: capacities are not uniformly U");

  const double gamma = 1.0 / (static_cast<double>(k) * k);
  const double gamma_U = gamma * static_cast<double>(U);

  std::vector<char> in_I(k, 0);
  std::vector<int> centers(k, -1);
  std::vector<char> is_center(n, 0);
  std::vector<char> covered(n, 0);

  auto add_ball = [&](int j, int c) {
    in_I[j] = 1;
    centers[j] = c;
    is_center[c] = 1;
    double reach = 2.0 * profile[j];
    for (int p = 0; p < n; ++p)
      if (inst.metric.dist(c, p) <= reach) covered[p] = 1;
  };

  // Guessed centers of the large optimal clusters.
  for (int j = 0; j < k_L_guess; ++j) {
    int c = rng.pick_index(n);
    if (is_center[c]) return std::nullopt;  // collided guesses cannot win
    add_ball(j, c);
  }

  // Cover the rest: each uncovered point seeds a ball under a guessed index.
  int scan = 0;
  int placed = k_L_guess;
  while (true) {
    while (scan < n && covered[scan]) ++scan;
    if (scan >= n) break;
    if (placed == k) return std::nullopt;  // fail: indices exhausted
    int pick = rng.pick_index(k - placed);
    int j = -1;
    for (int t = 0; t < k; ++t) {
      if (in_I[t]) continue;
      if (pick-- == 0) {
        j = t;
        break;
      }
    }
    add_ball(j, scan);
    ++placed;
  }

  // Guess, for each unused index, a placed ball meeting its optimal cluster.
  std::vector<int> I_list;
  for (int j = 0; j < k; ++j)
    if (in_I[j]) I_list.push_back(j);
  std::vector<std::vector<int>> T(k);
  for (int i = 0; i < k; ++i) {
    if (in_I[i]) continue;
    int j = I_list[rng.pick_index(static_cast<int>(I_list.size()))];
    T[j].push_back(i);
  }

  std::vector<double> ext_radii(I_list.size());
  std::vector<long long> ext_caps(I_list.size());
  const long long cap_ext = static_cast<long long>(std::floor(static_cast<double>(U) * (1.0 + gamma)));
  std::vector<int> sink_centers(I_list.size());
  for (size_t s = 0; s < I_list.size(); ++s) {
    int j = I_list[s];
    sink_centers[s] = centers[j];
    if (!T[j].empty()) {
      double R = 0.0;
      for (int i : T[j]) R = std::max(R, profile[i]);
      ext_radii[s] = 2.0 * profile[j] + 2.0 * R;
      ext_caps[s] = cap_ext;
    } else {
      ext_radii[s] = 2.0 * profile[j];
      ext_caps[s] = U;
    }
  }

  auto groups = cover_groups(inst.metric, sink_centers, ext_radii, ext_caps);
  if (!groups) return std::nullopt;

  std::vector<int> oversized;  // positions into I_list with |G| > U
  for (size_t s = 0; s < I_list.size(); ++s)
    if (static_cast<long long>((*groups)[s].size()) > U) oversized.push_back(static_cast<int>(s));

  std::vector<RedistributeBall> moved;
  if (!oversized.empty()) {
    std::vector<std::vector<int>> over_groups;
    for (int s : oversized) over_groups.push_back((*groups)[s]);
    std::vector<double> large(profile.begin(), profile.begin() + k_L_guess);
    auto redo = redistribute(inst.metric, over_groups, sink_centers, large, gamma_U, U);
    if (!redo) return std::nullopt;
    moved = std::move(*redo);
  }

  // Assemble: clusters for I in ascending index order, Redistribute balls,
  // then empty padding clusters at fresh centers.
  Clustering sol;
  sol.centers.reserve(k);
  std::vector<char> removed(n, 0);
  for (size_t m = 0; m < moved.size(); ++m)
    for (int p : moved[m].points) removed[p] = 1;

  for (size_t s = 0; s < I_list.size(); ++s) {
    int j = I_list[s];
    std::vector<int> members;
    bool oversize = static_cast<long long>((*groups)[s].size()) > U;
    for (int p : (*groups)[s])
      if (!oversize || !removed[p]) members.push_back(p);
    sol.centers.push_back(centers[j]);
    sol.members.push_back(std::move(members));
    sol.nominal_radii.push_back(ext_radii[s]);
  }
  for (auto& ball : moved) {
    if (is_center[ball.center]) return std::nullopt;  // cannot happen: V_R excluded centers
    is_center[ball.center] = 1;
    sol.centers.push_back(ball.center);
    sol.members.push_back(ball.points);
    sol.nominal_radii.push_back(ball.radius);
  }
  for (int p = 0; p < n && sol.k() < k; ++p) {
    if (is_center[p]) continue;
    is_center[p] = 1;
    sol.centers.push_back(p);
    sol.members.push_back({});
    sol.nominal_radii.push_back(0.0);
  }
  if (sol.k() != k) return std::nullopt;
  return sol;
}

// Repetition driver: sweeps (profile, k_L_guess) cells, cover-capable and
// cheap profiles first, one randomized iteration per cell per pass, until
// `budget` iterations have been spent. Keeps the minimum-objective valid
// clustering seen.
inline SolveResult run_uniform(const Instance& inst, double eps, unsigned long long budget,
                               uint64_t seed) {
  if (inst.n() < 1) throw std::invalid_argument("run_uniform: empty instance");
  long long U = inst.capacities.at(0);
  for (long long c : inst.capacities)
    if (c != U) throw std::invalid_argument("run_uniform: capacities are not uniform");

  const int variants = inst.k + 1;  // k_L_guess in 0..k
  return detail::run_profile_sweep(
      inst, eps, budget, seed, variants, /*cover_factor=*/2.0,
      [&](const double* profile, int variant, Rng& rng) {
        std::vector<double> prof(profile, profile + inst.k);
        return uniform_iteration(inst, prof, variant, U, rng);
      });
}

}  // namespace capradii
