#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "capradii/core.hpp"

namespace capradii {

struct RadiiProfile {
  std::vector<double> radii;
};

// Candidate radii vectors (r_1..r_k): for every maximum-scale guess R taken
// from the pairwise distances (plus 0), each coordinate ranges over {0}, a
// geometric grid from eps'·R/k up to R with ratio (1+eps'), and R itself,
// where eps' = eps/2. For the optimal radii there is then an emitted profile
// dominating them coordinate-wise whose objective norm loses at most a
// (1+eps) factor: round-up loss is (1+eps') per coordinate above the grid
// base and the at-most-k base substitutions add eps'·R in total.
class ProfileEnumerator {
 public:
  ProfileEnumerator(const Instance& inst, double eps) : k_(inst.k), eps_(eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("profiles: eps must be positive");
    if (inst.k < 1) throw std::invalid_argument("profiles: k must be at least 1");
    const int n = inst.n();
    scales_.reserve(static_cast<size_t>(n) * (n + 1) / 2 + 1);
    scales_.push_back(0.0);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) scales_.push_back(inst.metric.dist(a, b));
    std::sort(scales_.begin(), scales_.end());
    scales_.erase(std::unique(scales_.begin(), scales_.end()), scales_.end());
  }

  int k() const { return k_; }
  const std::vector<double>& scales() const { return scales_; }

  std::vector<double> coordinate_values(double scale) const {
    std::vector<double> vals;
    vals.push_back(0.0);
    if (scale > 0.0) {
      const double e2 = eps_ / 2.0;
      const double base = e2 * scale / k_;
      const int top = static_cast<int>(std::ceil(std::log(k_ / e2) / std::log1p(e2)));
      double v = base;
      for (int t = 0; t <= top; ++t) {
        vals.push_back(v);
        v *= (1.0 + e2);
      }
      vals.push_back(scale);
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    }
    return vals;
  }

  // Visits each profile once, lexicographically per ascending scale. The
  // all-zero tuple belongs to the scale-0 block only; per-scale value sets
  // are deduplicated, so equal distances do not repeat tuples.
  template <typename F>
  void for_each(F&& f) const {
    std::vector<double> tuple(k_);
    for (double scale : scales_) {
      const std::vector<double> vals = coordinate_values(scale);
      const int m = static_cast<int>(vals.size());
      std::vector<int> odo(k_, 0);
      while (true) {
        bool all_zero = true;
        for (int j = 0; j < k_; ++j) {
          tuple[j] = vals[odo[j]];
          if (tuple[j] != 0.0) all_zero = false;
        }
        if (scale == 0.0 || !all_zero) f(const_cast<const std::vector<double>&>(tuple));
        int pos = k_ - 1;
        while (pos >= 0 && odo[pos] == m - 1) {
          odo[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++odo[pos];
      }
    }
  }

  // Profile count without materializing tuples.
  unsigned long long count() const {
    unsigned long long total = 0;
    for (double scale : scales_) {
      unsigned long long m = coordinate_values(scale).size();
      unsigned long long block = 1;
      for (int j = 0; j < k_; ++j) {
        if (m != 0 && block > (~0ULL) / m) throw std::overflow_error("profile count overflow");
        block *= m;
      }
      if (scale > 0.0) block -= 1;  // all-zero tuple counted once, at scale 0
      total += block;
    }
    return total;
  }

  std::vector<RadiiProfile> materialize() const {
    std::vector<RadiiProfile> out;
    for_each([&](const std::vector<double>& t) { out.push_back(RadiiProfile{t}); });
    return out;
  }

 private:
  int k_ = 0;
  double eps_ = 0.0;
  std::vector<double> scales_;
};

// True when sorted(profile) dominates sorted(target) coordinate-wise, which
// is equivalent to the existence of a dominating index bijection.
inline bool sorted_dominates(std::vector<double> profile, std::vector<double> target) {
  if (profile.size() != target.size()) return false;
  std::sort(profile.begin(), profile.end());
  std::sort(target.begin(), target.end());
  for (size_t i = 0; i < profile.size(); ++i)
    if (profile[i] < target[i]) return false;
  return true;
}

}  // namespace capradii
