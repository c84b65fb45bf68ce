#include <gtest/gtest.h>

#include <cmath>

#include "capradii/generators.hpp"
#include "capradii/oracle.hpp"
#include "capradii/uniform.hpp"
#include "testutil.hpp"

using namespace capradii;
using testutil::line_instance;
using testutil::make_instance;

TEST(CoverGroups, SingleBallTakesEverything) {
  Instance inst = line_instance({0.0, 1.0, 2.0}, {3, 3, 3}, 1);
  auto groups = cover_groups(inst.metric, {1}, {1.0}, {3});
  ASSERT_TRUE(groups.has_value());
  EXPECT_EQ((*groups)[0], (std::vector<int>{0, 1, 2}));
}

TEST(CoverGroups, TightHalvesForceTheUniquePartition) {
  Instance inst = line_instance({0.0, 1.0, 5.0, 6.0}, {2, 2, 2, 2}, 2);
  auto groups = cover_groups(inst.metric, {0, 2}, {1.0, 1.0}, {2, 2});
  ASSERT_TRUE(groups.has_value());
  EXPECT_EQ((*groups)[0], (std::vector<int>{0, 1}));
  EXPECT_EQ((*groups)[1], (std::vector<int>{2, 3}));
}

TEST(CoverGroups, UncoveredPointMeansAbsent) {
  Instance inst = line_instance({0.0, 1.0, 50.0}, {3, 3, 3}, 1);
  EXPECT_FALSE(cover_groups(inst.metric, {0}, {2.0}, {3}).has_value());
}

TEST(CoverGroups, FeasibilityMatchesBruteForce) {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 5 + static_cast<int>(rng.next_below(4));
    Instance inst = testutil::random_euclidean(n, 2, std::vector<long long>(n, 3), 500 + rep);
    std::vector<int> centers = {0, 1};
    std::vector<double> radii = {rng.next_real(0.2, 1.4), rng.next_real(0.2, 1.4)};
    std::vector<long long> caps = {static_cast<long long>(rng.next_below(6)),
                                   static_cast<long long>(rng.next_below(6))};
    AssignmentProblem p;
    p.point_count = n;
    p.sink_count = 2;
    p.admissible.assign(n, {});
    p.sink_caps = caps;
    for (int q = 0; q < n; ++q)
      for (int j = 0; j < 2; ++j)
        if (inst.metric.dist(q, centers[j]) <= radii[j]) p.admissible[q].push_back(j);
    EXPECT_EQ(cover_groups(inst.metric, centers, radii, caps).has_value(),
              testutil::brute_assignment_feasible(p))
        << "rep=" << rep;
  }
}

TEST(Redistribute, NoGroupsMeansEmptyResult) {
  Instance inst = line_instance({0.0, 1.0}, {1, 1}, 1);
  auto res = redistribute(inst.metric, {}, {}, {1.0}, 0.5, 1);
  ASSERT_TRUE(res.has_value());
  EXPECT_TRUE(res->empty());
}

TEST(Redistribute, SingleOversizedGroupOffloadsToNearbyPoint) {
  // group of U+1=4 points at 0, an admissible outside point at 1
  Instance inst = line_instance({0.0, 0.0, 0.0, 0.0, 1.0}, std::vector<long long>(5, 3), 2);
  auto res = redistribute(inst.metric, {{0, 1, 2, 3}}, {0}, {2.0}, 1.0, 3);
  ASSERT_TRUE(res.has_value());
  ASSERT_EQ(res->size(), 1u);
  EXPECT_GE((*res)[0].points.size(), 1u);
  EXPECT_NE((*res)[0].center, 0);  // forbidden
}

TEST(Redistribute, FindsTheOnlyWorkingOrdering) {
  // Two oversized groups; group 0 is reachable only with the larger radius.
  // Positions: group 0 at 0, group 1 at 100, candidates at 5 and 99.5.
  std::vector<double> xs = {0, 0, 0, 0, 0, 100, 100, 100, 100, 100, 5, 99.5};
  Instance inst = line_instance(xs, std::vector<long long>(xs.size(), 4), 2);
  std::vector<std::vector<int>> groups = {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};
  std::vector<int> forbidden = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto res = redistribute(inst.metric, groups, forbidden, {1.0, 10.0}, 1.0, 4);
  ASSERT_TRUE(res.has_value());
  EXPECT_EQ((*res)[0].center, 10);
  EXPECT_DOUBLE_EQ((*res)[0].radius, 10.0);
  EXPECT_EQ((*res)[1].center, 11);
  EXPECT_DOUBLE_EQ((*res)[1].radius, 1.0);
  EXPECT_EQ((*res)[0].points.size(), 1u);  // removal count |G|-U = 1
  EXPECT_EQ((*res)[1].points.size(), 1u);
}

TEST(Redistribute, OutputsAreDisjointWithDistinctCenters) {
  Rng rng(71);
  int exercised = 0;
  for (int rep = 0; rep < 60; ++rep) {
    int n = 12;
    Instance inst = testutil::random_euclidean(n, 2, std::vector<long long>(n, 4), 9000 + rep,
                                               PNorm::l1(), 2.0);
    // two disjoint oversized groups of 5 (U = 4)
    std::vector<std::vector<int>> groups = {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};
    std::vector<double> large = {rng.next_real(0.5, 2.5), rng.next_real(0.5, 2.5)};
    auto res = redistribute(inst.metric, groups, {0, 5}, large, 1.0, 4);
    if (!res) continue;
    ++exercised;
    ASSERT_EQ(res->size(), 2u);
    EXPECT_NE((*res)[0].center, (*res)[1].center);
    std::vector<char> seen(n, 0);
    for (const auto& ball : *res) {
      EXPECT_EQ(ball.points.size(), 1u);  // removal count |G| - U
      for (int p : ball.points) {
        EXPECT_FALSE(seen[p]);
        seen[p] = 1;
        EXPECT_LE(inst.metric.dist(ball.center, p), ball.radius);
      }
    }
  }
  EXPECT_GT(exercised, 0);
}

TEST(Redistribute, AbsentWhenNoOrderingWorks) {
  Instance inst = line_instance({0, 0, 0, 0, 0, 50}, std::vector<long long>(6, 4), 2);
  // the only candidate (id 5) is 50 away; radius 1 reaches nothing
  auto res = redistribute(inst.metric, {{0, 1, 2, 3, 4}}, {0, 1, 2, 3, 4}, {1.0}, 1.0, 4);
  EXPECT_FALSE(res.has_value());
}

TEST(UniformIteration, ThreeCollinearPoints) {
  Instance inst = line_instance({0.0, 1.0, 2.0}, {3, 3, 3}, 1);
  int successes = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto out = uniform_iteration(inst, {1.0}, 1, 3, rng);
    if (!out) continue;
    ++successes;
    ASSERT_TRUE(validate_solution(inst, *out).ok());
    EXPECT_DOUBLE_EQ(out->nominal_radii[0], 2.0);
    EXPECT_LE(evaluate(inst, *out, true), 2.0);
  }
  EXPECT_GT(successes, 0);
}

TEST(UniformIteration, CoincidentPointsZeroCost) {
  Instance inst = make_instance(4, std::vector<double>(16, 0.0), std::vector<long long>(4, 4), 1);
  Rng rng(1);
  auto out = uniform_iteration(inst, {0.0}, 1, 4, rng);
  ASSERT_TRUE(out.has_value());
  EXPECT_DOUBLE_EQ(evaluate(inst, *out, false), 0.0);
}

TEST(UniformIteration, RejectsNonUniformCapacities) {
  Instance inst = line_instance({0.0, 1.0}, {1, 2}, 1);
  Rng rng(0);
  EXPECT_THROW(uniform_iteration(inst, {1.0}, 0, 2, rng), std::invalid_argument);
}

TEST(UniformIteration, RejectsBadGuessParameters) {
  Instance inst = line_instance({0.0, 1.0}, {2, 2}, 1);
  Rng rng(0);
  EXPECT_THROW(uniform_iteration(inst, {1.0}, 2, 2, rng), std::invalid_argument);
  EXPECT_THROW(uniform_iteration(inst, {1.0, 1.0}, 0, 2, rng), std::invalid_argument);
}

// Every non-absent output is a valid clustering and its nominal cost stays
// within the structural 3 * sum(r_j) budget.
TEST(UniformIteration, SeededRunsNeverEmitInvalidOrOverBudget) {
  Instance inst = testutil::random_euclidean(12, 3, std::vector<long long>(12, 4), 77);
  std::vector<double> profile = {0.4, 0.3, 0.2};
  double rsum = 0.9;
  int successes = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    for (int kl = 0; kl <= 3; ++kl) {
      Rng rng(mix_seed(42, seed, kl));
      auto out = uniform_iteration(inst, profile, kl, 4, rng);
      if (!out) continue;
      ++successes;
      ASSERT_TRUE(validate_solution(inst, *out).ok()) << "seed=" << seed << " kl=" << kl;
      double nominal = evaluate(inst, *out, false);
      ASSERT_LE(nominal, 3.0 * rsum + 1e-9);
    }
  }
  // the profile is generous enough that some guesses work
  EXPECT_GT(successes, 0);
}

TEST(UniformIteration, DeterministicGivenSeed) {
  Instance inst = testutil::random_euclidean(10, 2, std::vector<long long>(10, 5), 4);
  std::vector<double> profile = {0.8, 0.5};
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng ra(seed), rb(seed);
    auto a = uniform_iteration(inst, profile, 1, 5, ra);
    auto b = uniform_iteration(inst, profile, 1, 5, rb);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_EQ(a->centers, b->centers);
      EXPECT_EQ(a->members, b->members);
      EXPECT_EQ(a->nominal_radii, b->nominal_radii);
    }
  }
}

TEST(RunUniform, TwoBlobsMeetsTheRatioBound) {
  BlobInstance blob = gen_blobs({{0.0, 0.0}, {10.0, 0.0}}, {5, 5}, 0.5,
                                CapacityLaw::constant(5), 2, 99);
  Instance inst = blob.instance;
  OracleResult opt = optimal(inst);
  SolveResult res = run_uniform(inst, 0.1, 2000, 7);
  ASSERT_TRUE(res.stats.found);
  EXPECT_EQ(res.stats.invalid_outputs, 0ull);
  EXPECT_LE(res.stats.best_tightened, 3.0 * 1.1 * opt.opt_cost + 1e-9);
  EXPECT_GE(res.stats.best_tightened, opt.opt_cost - 1e-9);
}

TEST(RunUniform, L2ObjectiveMeetsItsBound) {
  BlobInstance blob = gen_blobs({{0.0, 0.0}, {10.0, 0.0}}, {5, 5}, 0.5,
                                CapacityLaw::constant(5), 2, 99, PNorm::lp(2.0));
  Instance inst = blob.instance;
  OracleResult opt = optimal(inst);
  SolveResult res = run_uniform(inst, 0.1, 2000, 7);
  ASSERT_TRUE(res.stats.found);
  double arm = std::sqrt(std::pow(2.0, 3) + 1.0);  // (2^{2p-1}+1)^{1/p} at p=2
  EXPECT_DOUBLE_EQ(arm, 3.0);
  EXPECT_LE(res.stats.best_tightened, arm * 1.1 * opt.opt_cost + 1e-9);
}

TEST(RunUniform, SingletonInstanceCostsZero) {
  Instance inst = make_instance(1, {0.0}, {1}, 1);
  SolveResult res = run_uniform(inst, 0.1, 10, 0);
  ASSERT_TRUE(res.stats.found);
  EXPECT_DOUBLE_EQ(res.stats.best_tightened, 0.0);
}

TEST(RunUniform, ZeroBudgetIsAParameterError) {
  Instance inst = make_instance(1, {0.0}, {1}, 1);
  EXPECT_THROW(run_uniform(inst, 0.1, 0, 0), std::invalid_argument);
}

TEST(RunUniform, RefusesOversizedProfileTables) {
  // k=4 with a tight eps explodes the candidate count; the driver must
  // refuse with a clear message instead of exhausting memory
  Instance inst = testutil::random_euclidean(24, 4, std::vector<long long>(24, 8), 5);
  try {
    run_uniform(inst, 0.02, 10, 0);
    FAIL() << "expected a refusal";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("radii profiles"), std::string::npos);
  }
}

TEST(RunUniform, DeterministicGivenSeed) {
  Instance inst = testutil::random_euclidean(8, 2, std::vector<long long>(8, 4), 3);
  SolveResult a = run_uniform(inst, 0.2, 300, 11);
  SolveResult b = run_uniform(inst, 0.2, 300, 11);
  EXPECT_EQ(a.stats.successes, b.stats.successes);
  EXPECT_EQ(a.stats.iterations, b.stats.iterations);
  if (a.stats.found) {
    EXPECT_DOUBLE_EQ(a.stats.best_tightened, b.stats.best_tightened);
    EXPECT_EQ(a.best->centers, b.best->centers);
  }
}

TEST(RunUniform, ReportsNoSolutionHonestly) {
  // k = n with capacity 1 everywhere: only the all-singletons solution
  // exists, and it is found; shrink the budget to exercise the explicit
  // not-found path instead on an infeasible-for-the-algorithm setup.
  Instance inst = line_instance({0.0, 1.0}, {1, 1}, 2);
  SolveResult res = run_uniform(inst, 0.5, 5, 0);
  if (!res.stats.found) {
    EXPECT_FALSE(res.best.has_value());
    EXPECT_EQ(res.stats.successes, 0ull);
  } else {
    EXPECT_TRUE(validate_solution(inst, *res.best).ok());
  }
}
