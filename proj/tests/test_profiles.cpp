#include <gtest/gtest.h>

#include "capradii/oracle.hpp"
#include "capradii/profiles.hpp"
#include "testutil.hpp"

using namespace capradii;
using testutil::make_instance;

TEST(Profiles, CoincidentPointsEmitAllZeros) {
  Instance inst = make_instance(3, std::vector<double>(9, 0.0), {3, 3, 3}, 2);
  ProfileEnumerator en(inst, 0.3);
  bool saw_zero = false;
  en.for_each([&](const std::vector<double>& t) {
    if (t[0] == 0.0 && t[1] == 0.0) saw_zero = true;
  });
  EXPECT_TRUE(saw_zero);
  EXPECT_EQ(en.count(), 1ull);  // only the zero scale exists
}

TEST(Profiles, TwoPointInstanceSeedsTheDistanceScale) {
  Instance inst = testutil::line_instance({0.0, 1.0}, {2, 2}, 1);
  ProfileEnumerator en(inst, 0.5);
  // OPT radius with k=1 is 1 (a center must sit on one of the points), so
  // some emitted profile must land in [1, 1.5].
  bool found = false;
  en.for_each([&](const std::vector<double>& t) {
    if (t[0] >= 1.0 && t[0] <= 1.5) found = true;
  });
  EXPECT_TRUE(found);
}

TEST(Profiles, RejectsNonPositiveEps) {
  Instance inst = testutil::line_instance({0.0, 1.0}, {2, 2}, 1);
  EXPECT_THROW(ProfileEnumerator(inst, 0.0), std::invalid_argument);
  EXPECT_THROW(ProfileEnumerator(inst, -1.0), std::invalid_argument);
}

TEST(Profiles, CountMatchesEnumeration) {
  Instance inst = testutil::random_euclidean(6, 2, std::vector<long long>(6, 3), 11);
  ProfileEnumerator en(inst, 0.4);
  unsigned long long seen = 0;
  en.for_each([&](const std::vector<double>&) { ++seen; });
  EXPECT_EQ(seen, en.count());
}

TEST(Profiles, EmissionIsDeterministic) {
  Instance inst = testutil::random_euclidean(5, 2, std::vector<long long>(5, 3), 3);
  ProfileEnumerator en(inst, 0.25);
  std::vector<std::vector<double>> a, b;
  en.for_each([&](const std::vector<double>& t) { a.push_back(t); });
  en.for_each([&](const std::vector<double>& t) { b.push_back(t); });
  EXPECT_EQ(a, b);
}

// The enumeration guarantee, checked against the exact oracle: some emitted
// profile dominates the optimal radii coordinate-wise with at most a
// (1+eps) loss in the radius sum.
TEST(Profiles, DominationHarnessAgainstOracle) {
  const double eps = 0.2;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    int n = 5 + static_cast<int>(seed % 6);       // 5..10
    int k = 1 + static_cast<int>(seed % 2);       // 1..2
    std::vector<long long> caps(n);
    Rng crng(seed * 77 + 5);
    for (auto& c : caps) c = 1 + static_cast<long long>(crng.next_below(static_cast<uint64_t>(n)));
    Instance inst = testutil::random_euclidean(n, k, caps, seed);
    if (!validate_instance(inst).ok()) {
      for (auto& c : inst.capacities) c += n;  // force feasibility
    }
    OracleResult opt = optimal(inst);
    double opt_sum = 0.0;
    for (double r : opt.optimal_radii) opt_sum += r;

    ProfileEnumerator en(inst, eps);
    bool dominated = false;
    en.for_each([&](const std::vector<double>& t) {
      if (dominated) return;
      double s = 0.0;
      for (double v : t) s += v;
      if (s <= (1.0 + eps) * opt_sum && sorted_dominates(t, opt.optimal_radii)) dominated = true;
    });
    EXPECT_TRUE(dominated) << "seed=" << seed << " n=" << n << " k=" << k;
  }
}
