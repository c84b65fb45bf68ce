#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "capradii/core.hpp"
#include "capradii/profiles.hpp"
#include "capradii/rng.hpp"

namespace capradii {

struct SolveStats {
  unsigned long long iterations = 0;
  unsigned long long successes = 0;
  unsigned long long invalid_outputs = 0;  // solver outputs failing validation
  unsigned long long profile_count = 0;
  unsigned long long passes = 0;
  double best_nominal = std::numeric_limits<double>::quiet_NaN();
  double best_tightened = std::numeric_limits<double>::quiet_NaN();
  bool found = false;
};

struct SolveResult {
  std::optional<Clustering> best;
  SolveStats stats;
};

namespace detail {

// Materialized profiles with a visit order: profiles whose scaled balls can
// greedily cover the point set come first, then ascending objective norm.
// The cover test is a prioritizer only; rejected profiles are still visited
// if the budget reaches them.
struct ProfileTable {
  int k = 0;
  std::vector<double> flat;      // count * k radii
  std::vector<double> norms;     // objective norm per profile
  std::vector<uint32_t> order;   // visit order over profile indices

  size_t count() const { return norms.size(); }
  const double* profile(uint32_t idx) const { return flat.data() + static_cast<size_t>(idx) * k; }
};

class CoverScratch {
 public:
  CoverScratch(const MetricSpace& metric, double factor)
      : metric_(metric), n_(metric.size()), factor_(factor) {
    covered_.resize((n_ + 63) / 64);
  }

  // True when some radius order lets greedy ball placement (factor * r around
  // the lowest uncovered point) cover all points within k balls.
  bool covers(const double* radii, int k) {
    sorted_.assign(radii, radii + k);
    std::sort(sorted_.begin(), sorted_.end());
    if (k <= 4) {
      perm_ = sorted_;
      do {
        if (run_order(perm_)) return true;
      } while (std::next_permutation(perm_.begin(), perm_.end()));
      return false;
    }
    if (run_order(sorted_)) return true;
    std::reverse(sorted_.begin(), sorted_.end());
    return run_order(sorted_);
  }

 private:
  bool run_order(const std::vector<double>& radii) {
    std::fill(covered_.begin(), covered_.end(), 0);
    int next = 0;
    for (double r : radii) {
      while (next < n_ && (covered_[next >> 6] >> (next & 63) & 1)) ++next;
      if (next >= n_) return true;
      double reach = factor_ * r;
      for (int p = next; p < n_; ++p)
        if (metric_.dist(next, p) <= reach) covered_[p >> 6] |= 1ULL << (p & 63);
    }
    while (next < n_ && (covered_[next >> 6] >> (next & 63) & 1)) ++next;
    return next >= n_;
  }

  const MetricSpace& metric_;
  int n_;
  double factor_;
  std::vector<uint64_t> covered_;
  std::vector<double> sorted_, perm_;
};

inline ProfileTable build_profile_table(const Instance& inst, double eps, double cover_factor) {
  ProfileEnumerator en(inst, eps);
  ProfileTable table;
  table.k = inst.k;
  unsigned long long count = en.count();
  // materialized table: k radii + norm + order + flags per profile
  unsigned long long bytes = count * (static_cast<unsigned long long>(inst.k) + 2) * 8ull;
  if (bytes > (1ull << 30) + (1ull << 28)) {
    std::ostringstream os;
    os << "solver: " << count << " candidate radii profiles would need about "
       << (bytes >> 20) << " MiB; raise --eps or shrink the instance";
    throw std::runtime_error(os.str());
  }
  table.flat.reserve(count * inst.k);
  table.norms.reserve(count);
  en.for_each([&](const std::vector<double>& t) {
    table.flat.insert(table.flat.end(), t.begin(), t.end());
    table.norms.push_back(aggregate_radii(t, inst.norm));
  });

  std::vector<uint8_t> pass(table.count(), 0);
  CoverScratch scratch(inst.metric, cover_factor);
  for (size_t i = 0; i < table.count(); ++i)
    pass[i] = scratch.covers(table.profile(static_cast<uint32_t>(i)), inst.k) ? 1 : 0;

  // Many scales emit near-identical tuples, and the tuple density per norm
  // slice is huge: a plain ascending-norm sweep would spend any realistic
  // budget inside one thin slice. Instead, bin cover-capable profiles into
  // octave shape classes (each coordinate quantized at ratio 2) and
  // interleave: round r visits one member of every class, classes ordered
  // by their cheapest norm, so one round spans the entire radius range.
  // Within a class, visits follow bit-reversed rank over the ascending-norm
  // member list: cheapest first, then spread across the octave interior.
  // Profiles failing the cover test come last. Every profile is still
  // visited once per full pass.
  double min_positive = std::numeric_limits<double>::infinity();
  for (double v : table.flat)
    if (v > 0.0) min_positive = std::min(min_positive, v);
  const double log_ratio = std::log(2.0);
  auto shape_key = [&](const double* radii) {
    uint64_t key = 0xcbf29ce484222325ULL;
    for (int j = 0; j < table.k; ++j) {
      long long level = radii[j] == 0.0
                            ? std::numeric_limits<long long>::min()
                            : static_cast<long long>(std::floor(
                                  std::log(radii[j] / min_positive) / log_ratio + 1e-9));
      key = mix_seed(key, static_cast<uint64_t>(level), static_cast<uint64_t>(j));
    }
    return key;
  };

  std::vector<uint32_t> passing, failing;
  passing.reserve(table.count());
  for (size_t i = 0; i < table.count(); ++i)
    (pass[i] ? passing : failing).push_back(static_cast<uint32_t>(i));
  auto by_norm = [&](uint32_t a, uint32_t b) {
    if (table.norms[a] != table.norms[b]) return table.norms[a] < table.norms[b];
    return a < b;
  };
  std::sort(passing.begin(), passing.end(), by_norm);
  std::sort(failing.begin(), failing.end(), by_norm);

  std::unordered_map<uint64_t, uint32_t> class_of;
  std::vector<std::vector<uint32_t>> classes;  // by first-seen = ascending cheapest norm
  for (uint32_t idx : passing) {
    uint64_t key = shape_key(table.profile(idx));
    auto [it, fresh] = class_of.try_emplace(key, static_cast<uint32_t>(classes.size()));
    if (fresh) classes.push_back({});
    classes[it->second].push_back(idx);
  }

  auto bitrev = [](uint32_t x) {
    x = (x >> 16) | (x << 16);
    x = ((x >> 8) & 0x00ff00ffu) | ((x & 0x00ff00ffu) << 8);
    x = ((x >> 4) & 0x0f0f0f0fu) | ((x & 0x0f0f0f0fu) << 4);
    x = ((x >> 2) & 0x33333333u) | ((x & 0x33333333u) << 2);
    x = ((x >> 1) & 0x55555555u) | ((x & 0x55555555u) << 1);
    return x;
  };
  for (auto& cls : classes) {
    std::vector<uint32_t> rank(cls.size());
    std::iota(rank.begin(), rank.end(), 0u);
    std::stable_sort(rank.begin(), rank.end(),
                     [&](uint32_t a, uint32_t b) { return bitrev(a) < bitrev(b); });
    std::vector<uint32_t> spread(cls.size());
    for (size_t i = 0; i < cls.size(); ++i) spread[i] = cls[rank[i]];
    cls = std::move(spread);
  }

  table.order.reserve(table.count());
  for (size_t round = 0, left = passing.size(); left > 0; ++round)
    for (const auto& cls : classes)
      if (round < cls.size()) {
        table.order.push_back(cls[round]);
        --left;
      }
  table.order.insert(table.order.end(), failing.begin(), failing.end());
  return table;
}

// Budgeted sweep: repeated passes over the profile order, one randomized
// iteration per (profile, variant) cell per pass, until `budget` iterations
// have run. Every emitted clustering is validated before the min-merge.
template <typename IterFn>
SolveResult run_profile_sweep(const Instance& inst, double eps, unsigned long long budget,
                              uint64_t seed, int variants, double cover_factor, IterFn&& iter) {
  if (budget == 0) throw std::invalid_argument("solver: budget must be positive");
  if (variants < 1) throw std::invalid_argument("solver: no variants to try");

  ProfileTable table = build_profile_table(inst, eps, cover_factor);
  SolveResult res;
  res.stats.profile_count = table.count();

  for (unsigned long long pass = 0;; ++pass) {
    res.stats.passes = pass + 1;
    for (uint32_t idx : table.order) {
      const double* profile = table.profile(idx);
      for (int v = 0; v < variants; ++v) {
        if (res.stats.iterations >= budget) return res;
        Rng rng(mix_seed(seed, idx, static_cast<uint64_t>(v), pass));
        std::optional<Clustering> out = iter(profile, v, rng);
        ++res.stats.iterations;
        if (!out) continue;
        ValidationReport rep = validate_solution(inst, *out);
        if (!rep.ok()) {
          ++res.stats.invalid_outputs;
          continue;
        }
        ++res.stats.successes;
        double tight = aggregate_radii(tightened_radii(inst, *out), inst.norm);
        double nominal = aggregate_radii(out->nominal_radii, inst.norm);
        if (!res.stats.found || tight < res.stats.best_tightened) {
          res.stats.found = true;
          res.stats.best_tightened = tight;
          res.stats.best_nominal = nominal;
          res.best = std::move(out);
        }
      }
    }
  }
}

}  // namespace detail

}  // namespace capradii
