#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "capradii/core.hpp"
#include "capradii/flow.hpp"
#include "capradii/oracle.hpp"
#include "capradii/rng.hpp"
#include "capradii/solver_common.hpp"

namespace capradii {

inline double alpha_star() { return (1.0 + std::sqrt(13.0)) / 6.0; }

// Worst-case ratio of the two radius-growth arms; minimized at alpha_star
// where both arms equal 4 + sqrt(13).
inline double alpha_arm_bound(double alpha) {
  return std::max(3.0 * (1.0 + 2.0 * alpha), 5.0 + 2.0 / alpha);
}

struct InsertOutcome {
  enum Tag { kPlaced, kRestarted } tag = kPlaced;
  int index = -1;  // family u when placed, restart index h when restarted
};

struct NonUniformCounters {
  int insert_calls = 0;
  int insert_option2 = 0;
  int shifts = 0;  // indices moved I3 -> I2
  int max_update_turns = 0;
  unsigned long long transitions_checked = 0;
};

// Wraps the output balls into a clustering via the assignment flow
// (admissible iff d(p, c_j) <= radius_j, capacity U_{c_j}); nullopt signals
// that the iteration's guesses could not support a feasible assignment.
inline std::optional<Clustering> extract_assignment(const Instance& inst,
                                                    const std::vector<Ball>& balls) {
  const int k = static_cast<int>(balls.size());
  std::vector<int> centers(k);
  std::vector<double> radii(k);
  std::vector<char> seen(inst.n(), 0);
  for (int j = 0; j < k; ++j) {
    centers[j] = balls[j].center;
    radii[j] = balls[j].radius;
    if (balls[j].center < 0 || balls[j].center >= inst.n() || seen[balls[j].center])
      throw std::invalid_argument("extract_assignment: centers must be distinct points");
    seen[balls[j].center] = 1;
  }
  auto assign = assignment_for(inst, centers, radii);
  if (!assign) return std::nullopt;
  Clustering sol;
  sol.centers = centers;
  sol.nominal_radii = radii;
  sol.members.assign(k, {});
  for (int p = 0; p < inst.n(); ++p) sol.members[(*assign)[p]].push_back(p);
  return sol;
}

// One randomized iteration for general capacities, with the alpha-scaled
// radius arms (alpha = 1 gives the plain 3/5/9 bounds). The live state is
// the index partition I1..I4, the guessed-optimal-center set I*, one ball
// per placed index and a reserved point set per I3 index. Structural
// invariants are asserted after every transition; any failed guard or guess
// aborts the iteration.
class NonUniformIteration {
 public:
  NonUniformIteration(const Instance& inst, std::vector<double> profile, double alpha,
                      Rng& rng, NonUniformCounters* counters = nullptr)
      : inst_(inst),
        r_(std::move(profile)),
        alpha_(alpha),
        rng_(rng),
        counters_(counters),
        n_(inst.n()),
        k_(inst.k) {
    if (static_cast<int>(r_.size()) != k_)
      throw std::invalid_argument("nonuniform_iteration: profile length != k");
    if (!(alpha > 0.0) || alpha > 1.0)
      throw std::invalid_argument("nonuniform_iteration: alpha must lie in (0,1]");
    insert_limit_ = 2 * k_ * k_ + 3 * k_;
    init_state();
  }

  std::optional<Clustering> run() {
    init_state();
    if (cover_phase() != Status::kOk) return std::nullopt;
    while (true) {
      int j = highest_radius_free_index();
      if (j < 0) break;  // I4 empty
      Status st = handle_index(j);
      if (st == Status::kFailed) return std::nullopt;
      if (st == Status::kRestarted && cover_phase() != Status::kOk) return std::nullopt;
    }
    std::vector<Ball> out(k_);
    for (int j = 0; j < k_; ++j) out[j] = Ball{center_[j], output_radius(j)};
    return extract_assignment(inst_, out);
  }

  // One protocol step: either places B(p,r) into family u moving idx there,
  // or declares p an optimal center and resets the state around the grown
  // I*. nullopt aborts the iteration (guard tripped or caller broke the
  // p-is-no-center precondition).
  std::optional<InsertOutcome> insert_ball(int p, int idx, double radius, int family) {
    ++insert_calls_;
    if (counters_) counters_->insert_calls = insert_calls_;
    if (insert_calls_ > insert_limit_) return std::nullopt;
    if (p < 0 || p >= n_ || is_center_[p]) return std::nullopt;
    if (loc_[idx] == Loc::kB1 || loc_[idx] == Loc::kB2) return std::nullopt;

    if (rng_.coin()) {
      // option (i): place the ball
      detach(idx);
      loc_[idx] = family == 1 ? Loc::kB1 : family == 2 ? Loc::kB2 : Loc::kB3;
      center_[idx] = p;
      ball_radius_[idx] = radius;
      is_center_[p] = 1;
      if (family == 1) add_cover(p, radius);
      check_state();
      return InsertOutcome{InsertOutcome::kPlaced, family};
    }

    // option (ii): p is guessed to be an optimal center; restart the cover loop
    ++insert_option2_;
    if (counters_) counters_->insert_option2 = insert_option2_;
    if (insert_option2_ > k_) return std::nullopt;
    std::vector<int> pool;
    for (int i = 0; i < k_; ++i)
      if (!istar_[i]) pool.push_back(i);
    if (pool.empty()) return std::nullopt;
    int h = pool[rng_.pick_index(static_cast<int>(pool.size()))];
    istar_[h] = 1;
    center_[h] = p;
    for (int i = 0; i < k_; ++i) {
      if (istar_[i]) {
        loc_[i] = Loc::kB1;
        ball_radius_[i] = r_[i];
      } else {
        loc_[i] = Loc::kFree;
        center_[i] = -1;
        ball_radius_[i] = 0.0;
      }
      reserved_[i].clear();
    }
    std::fill(is_center_.begin(), is_center_.end(), 0);
    std::fill(cover_.begin(), cover_.end(), 0);
    for (int i = 0; i < k_; ++i)
      if (istar_[i]) {
        is_center_[center_[i]] = 1;
        add_cover(center_[i], ball_radius_[i]);
      }
    check_state();
    return InsertOutcome{InsertOutcome::kRestarted, h};
  }

  double output_radius(int j) const {
    switch (loc_[j]) {
      case Loc::kB1:
        return 3.0 * (1.0 + 2.0 * alpha_) * r_[j];
      case Loc::kB2:
        return (5.0 + 2.0 / alpha_) * r_[j];
      case Loc::kB3:
        return ball_radius_[j];  // the stored replacement ball B(c_j, r_j)
      default:
        throw std::logic_error("output_radius: index still unplaced");
    }
  }

  // Extended-ball radius used when carving the candidate set P_j.
  double extended_radius(int h) const {
    if (loc_[h] == Loc::kB1) return 3.0 * (1.0 + 2.0 * alpha_) * r_[h];
    if (loc_[h] == Loc::kB2) return (5.0 + 2.0 / alpha_) * r_[h];
    throw std::logic_error("extended_radius: index not in I1/I2");
  }

  // Introspection (index sets 1..4, the I* flags, per-index ball data).
  std::vector<int> index_set(int which) const {
    Loc want = which == 1   ? Loc::kB1
               : which == 2 ? Loc::kB2
               : which == 3 ? Loc::kB3
                            : Loc::kFree;
    std::vector<int> out;
    for (int i = 0; i < k_; ++i)
      if (loc_[i] == want) out.push_back(i);
    return out;
  }
  bool in_istar(int i) const { return istar_[i] != 0; }
  int center_of(int i) const { return center_[i]; }
  double stored_radius(int i) const { return ball_radius_[i]; }
  const std::vector<int>& reserved_of(int i) const { return reserved_[i]; }

 private:
  enum class Loc : uint8_t { kB1, kB2, kB3, kFree };  // kFree = I4
  enum class Status { kOk, kRestarted, kFailed };

  void init_state() {
    loc_.assign(k_, Loc::kFree);
    istar_.assign(k_, 0);
    center_.assign(k_, -1);
    ball_radius_.assign(k_, 0.0);
    reserved_.assign(k_, {});
    is_center_.assign(n_, 0);
    cover_.assign(n_, 0);
    insert_calls_ = 0;
    insert_option2_ = 0;
  }

  Status as_status(const std::optional<InsertOutcome>& o) const {
    if (!o) return Status::kFailed;
    return o->tag == InsertOutcome::kRestarted ? Status::kRestarted : Status::kOk;
  }

  std::vector<int> random_subset(const std::vector<int>& pool) {
    std::vector<int> out;
    for (int i : pool)
      if (rng_.coin()) out.push_back(i);
    return out;
  }

  void detach(int idx) {
    if (loc_[idx] == Loc::kB3) {
      // the replacement ball leaves B3 (its index shifts to B2)
      if (center_[idx] >= 0) is_center_[center_[idx]] = 0;
      reserved_[idx].clear();
      if (counters_) ++counters_->shifts;
    }
    loc_[idx] = Loc::kFree;
  }

  void add_cover(int c, double radius) {
    for (int p = 0; p < n_; ++p)
      if (inst_.metric.dist(c, p) <= radius) cover_[p] = 1;
  }

  Status cover_phase() {
    while (true) {
      int p = -1;
      for (int q = 0; q < n_; ++q)
        if (!cover_[q]) {
          p = q;
          break;
        }
      if (p < 0) return Status::kOk;
      std::vector<int> free = index_set(4);
      if (free.empty()) return Status::kFailed;  // uncovered point, no index left
      int j = free[rng_.pick_index(static_cast<int>(free.size()))];
      int x = best_capacity_point_within(p, r_[j]);
      if (x < 0) return Status::kFailed;
      Status st = as_status(insert_ball(x, j, 3.0 * r_[j], 1));
      if (st == Status::kFailed) return Status::kFailed;
      // on kOk the cover grew; on kRestarted it was rebuilt; keep scanning
    }
  }

  Status handle_index(int j) {
    std::vector<int> placed;
    for (int i = 0; i < k_; ++i)
      if (loc_[i] == Loc::kB1 || loc_[i] == Loc::kB2) placed.push_back(i);
    std::vector<int> T = random_subset(placed);

    int h = -1;
    for (int t : T)
      if (r_[j] >= alpha_ * ball_radius_[t]) {
        h = t;
        break;
      }
    if (h >= 0) {
      int x = best_capacity_point_within(center_[h], ball_radius_[h] + r_[j]);
      if (x < 0) return Status::kFailed;
      return as_status(insert_ball(x, j, 2.0 * ball_radius_[h] + 3.0 * r_[j], 2));
    }

    // candidate set P_j: inside every extended ball of T, outside the other
    // placed balls and outside all reserved sets
    std::vector<char> in_pj(n_, 1);
    for (int t : T) {
      double er = extended_radius(t);
      for (int p = 0; p < n_; ++p)
        if (inst_.metric.dist(center_[t], p) > er) in_pj[p] = 0;
    }
    std::vector<char> in_T(k_, 0);
    for (int t : T) in_T[t] = 1;
    for (int i : placed) {
      if (in_T[i]) continue;
      for (int p = 0; p < n_; ++p)
        if (inst_.metric.dist(center_[i], p) <= ball_radius_[i]) in_pj[p] = 0;
    }
    for (int i = 0; i < k_; ++i)
      if (loc_[i] == Loc::kB3)
        for (int p : reserved_[i]) in_pj[p] = 0;

    return update_balls(j, std::move(in_pj));
  }

  Status update_balls(int j, std::vector<char> in_pj) {
    std::vector<char> in_z(k_, 0);
    for (int i = 0; i < k_; ++i)
      if (loc_[i] == Loc::kB3 || loc_[i] == Loc::kFree) in_z[i] = 1;

    int turns = 0;
    while (true) {
      ++turns;
      if (counters_) counters_->max_update_turns = std::max(counters_->max_update_turns, turns);
      if (turns > k_) return Status::kFailed;  // loop guard: Z shrinks every repeat

      // x maximizes min(U_x, |B(x, r_j) ∩ P_j|); ties to the lowest id
      int x = -1;
      long long best_val = -1;
      for (int p = 0; p < n_; ++p) {
        if (is_center_[p]) continue;
        long long inside = 0;
        for (int q = 0; q < n_; ++q)
          if (in_pj[q] && inst_.metric.dist(p, q) <= r_[j]) ++inside;
        long long val = std::min(inst_.capacities[p], inside);
        if (val > best_val) {
          best_val = val;
          x = p;
        }
      }
      if (x < 0) return Status::kFailed;

      std::vector<int> z_list;
      for (int i = 0; i < k_; ++i)
        if (in_z[i]) z_list.push_back(i);
      std::vector<int> L = random_subset(z_list);

      if (L.empty()) {
        auto out = insert_ball(x, j, r_[j], 3);
        if (out && out->tag == InsertOutcome::kPlaced) {
          reserved_[j].clear();
          for (int q = 0; q < n_; ++q)
            if (in_pj[q] && inst_.metric.dist(x, q) <= r_[j]) reserved_[j].push_back(q);
          check_state();
        }
        return as_status(out);
      }

      int t = -1;
      for (int i : L)
        if (r_[i] > r_[j]) {
          t = i;
          break;
        }
      if (t >= 0) {
        // t must sit in I3: anything left in I4 has radius at most r_j
        if (loc_[t] != Loc::kB3) return Status::kFailed;
        int y = best_capacity_point_within(x, r_[j] + r_[t]);
        if (y < 0) return Status::kFailed;
        return as_status(insert_ball(y, t, 5.0 * r_[t], 2));
      }

      if (rng_.coin()) {
        return as_status(insert_ball(x, j, 5.0 * r_[j], 2));
      }
      // shrink the candidate set and the guess list
      for (int i : L) in_z[i] = 0;
      for (int q = 0; q < n_; ++q)
        if (in_pj[q] && inst_.metric.dist(x, q) <= 3.0 * r_[j]) in_pj[q] = 0;
    }
  }

  // Highest-capacity non-center point within `radius` of `around`; -1 if none.
  int best_capacity_point_within(int around, double radius) const {
    int best = -1;
    long long best_cap = -1;
    for (int p = 0; p < n_; ++p) {
      if (is_center_[p]) continue;
      if (inst_.metric.dist(around, p) > radius) continue;
      if (inst_.capacities[p] > best_cap) {
        best_cap = inst_.capacities[p];
        best = p;
      }
    }
    return best;
  }

  int highest_radius_free_index() const {
    int best = -1;
    for (int i = 0; i < k_; ++i) {
      if (loc_[i] != Loc::kFree) continue;
      if (best < 0 || r_[i] > r_[best]) best = i;
    }
    return best;
  }

  // Structural invariants, asserted after every state transition.
  void check_state() {
    if (counters_) ++counters_->transitions_checked;
    std::vector<char> center_owner(n_, 0);
    double min_r_b2 = std::numeric_limits<double>::infinity();
    double max_r_free = -1.0;
    for (int i = 0; i < k_; ++i) {
      if (istar_[i] && loc_[i] != Loc::kB1)
        throw std::logic_error("state: I* index outside I1");
      if (loc_[i] == Loc::kFree) {
        max_r_free = std::max(max_r_free, r_[i]);
        continue;
      }
      int c = center_[i];
      if (c < 0 || c >= n_) throw std::logic_error("state: placed index without center");
      if (center_owner[c]) throw std::logic_error("state: duplicate ball center");
      center_owner[c] = 1;
      if (!is_center_[c]) throw std::logic_error("state: center bitmap out of sync");
      const double tol = 1e-9 * (1.0 + ball_radius_[i]);
      if (loc_[i] == Loc::kB1 && ball_radius_[i] > 3.0 * r_[i] + tol)
        throw std::logic_error("state: B1 radius above 3r");
      if (loc_[i] == Loc::kB2 && ball_radius_[i] > (3.0 + 2.0 / alpha_) * r_[i] + tol)
        throw std::logic_error("state: B2 radius above (3+2/alpha)r");
      if (loc_[i] == Loc::kB3 && ball_radius_[i] != r_[i])
        throw std::logic_error("state: B3 ball must have radius r_j");
      if (loc_[i] == Loc::kB2) min_r_b2 = std::min(min_r_b2, r_[i]);
      if (loc_[i] != Loc::kB3 && !reserved_[i].empty())
        throw std::logic_error("state: reserved set outside I3");
    }
    if (max_r_free > min_r_b2)
      throw std::logic_error("state: I4 radius exceeds an I2 radius");
    std::vector<char> reserved_owner(n_, 0);
    for (int i = 0; i < k_; ++i) {
      if (loc_[i] != Loc::kB3) continue;
      for (int p : reserved_[i]) {
        if (reserved_owner[p]) throw std::logic_error("state: reserved sets intersect");
        reserved_owner[p] = 1;
      }
    }
  }

  const Instance& inst_;
  std::vector<double> r_;
  double alpha_;
  Rng& rng_;
  NonUniformCounters* counters_;
  int n_, k_;
  int insert_limit_ = 0;
  int insert_calls_ = 0;
  int insert_option2_ = 0;

  std::vector<Loc> loc_;
  std::vector<char> istar_;
  std::vector<int> center_;
  std::vector<double> ball_radius_;
  std::vector<std::vector<int>> reserved_;
  std::vector<char> is_center_;
  std::vector<char> cover_;
};

inline std::optional<Clustering> nonuniform_iteration(const Instance& inst,
                                                      const std::vector<double>& profile,
                                                      double alpha, Rng& rng,
                                                      NonUniformCounters* counters = nullptr) {
  NonUniformIteration it(inst, profile, alpha, rng, counters);
  return it.run();
}

// Repetition driver over the profile stream, cover-capable and cheap
// profiles first; keeps the minimum-objective valid clustering.
inline SolveResult run_nonuniform(const Instance& inst, double eps, double alpha,
                                  unsigned long long budget, uint64_t seed) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("run_nonuniform: alpha must lie in (0,1]");
  // cover reach 2r: a ball B(x, 3r_j) with x within r_j of the seed point is
  // only guaranteed to cover B(p, 2r_j)
  return detail::run_profile_sweep(
      inst, eps, budget, seed, /*variants=*/1, /*cover_factor=*/2.0,
      [&](const double* profile, int, Rng& rng) {
        std::vector<double> prof(profile, profile + inst.k);
        return nonuniform_iteration(inst, prof, alpha, rng);
      });
}

}  // namespace capradii
