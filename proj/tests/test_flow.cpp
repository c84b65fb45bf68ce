#include <gtest/gtest.h>

#include "capradii/flow.hpp"
#include "capradii/rng.hpp"
#include "testutil.hpp"

using namespace capradii;

TEST(MaxMatching, EmptyGraph) {
  BipartiteGraph g;
  EXPECT_EQ(matching_size(max_matching(g)), 0);
}

TEST(MaxMatching, CompleteTwoByTwo) {
  BipartiteGraph g;
  g.left_count = g.right_count = 2;
  g.adjacency = {{0, 1}, {0, 1}};
  auto m = max_matching(g);
  EXPECT_EQ(matching_size(m), 2);
  EXPECT_EQ(matching_size(m), testutil::brute_max_matching(g));
}

TEST(MaxMatching, StarHasHallDeficiency) {
  BipartiteGraph g;
  g.left_count = 3;
  g.right_count = 1;
  g.adjacency = {{0}, {0}, {0}};
  EXPECT_EQ(matching_size(max_matching(g)), 1);
}

TEST(MaxMatching, MatchesBruteForceOnAllSmallGraphs) {
  // every bipartite graph with up to 4+4 vertices
  for (int nl = 0; nl <= 4; ++nl) {
    for (int nr = 0; nr <= 4; ++nr) {
      int bits = nl * nr;
      for (int mask = 0; mask < (1 << bits); ++mask) {
        BipartiteGraph g;
        g.left_count = nl;
        g.right_count = nr;
        g.adjacency.assign(nl, {});
        for (int u = 0; u < nl; ++u)
          for (int v = 0; v < nr; ++v)
            if (mask >> (u * nr + v) & 1) g.adjacency[u].push_back(v);
        ASSERT_EQ(matching_size(max_matching(g)), testutil::brute_max_matching(g))
            << "nl=" << nl << " nr=" << nr << " mask=" << mask;
      }
    }
  }
}

TEST(MaxMatching, DeterministicGivenInput) {
  BipartiteGraph g;
  g.left_count = 3;
  g.right_count = 3;
  g.adjacency = {{2, 0}, {1, 0}, {2}};
  auto a = max_matching(g);
  auto b = max_matching(g);
  EXPECT_EQ(a, b);
}

TEST(FeasibleAssignment, SingleSinkFits) {
  AssignmentProblem p;
  p.point_count = 3;
  p.sink_count = 1;
  p.admissible = {{0}, {0}, {0}};
  p.sink_caps = {3};
  auto a = feasible_assignment(p);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(*a, (std::vector<int>{0, 0, 0}));
}

TEST(FeasibleAssignment, PigeonholeInfeasible) {
  AssignmentProblem p;
  p.point_count = 3;
  p.sink_count = 1;
  p.admissible = {{0}, {0}, {0}};
  p.sink_caps = {2};
  EXPECT_FALSE(feasible_assignment(p).has_value());
}

TEST(FeasibleAssignment, AgreesWithBruteForceOnRandomProblems) {
  Rng rng(123);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int rep = 0; rep < 200; ++rep) {
    AssignmentProblem p;
    p.point_count = 8;
    p.sink_count = 3;
    p.admissible.assign(8, {});
    for (int i = 0; i < 8; ++i)
      for (int s = 0; s < 3; ++s)
        if (rng.coin()) p.admissible[i].push_back(s);
    p.sink_caps = {static_cast<long long>(rng.next_below(5)), static_cast<long long>(rng.next_below(5)),
                   static_cast<long long>(rng.next_below(5))};
    bool flow = feasible_assignment(p).has_value();
    bool brute = testutil::brute_assignment_feasible(p);
    ASSERT_EQ(flow, brute) << "rep=" << rep;
    (flow ? feasible_seen : infeasible_seen)++;
  }
  EXPECT_GT(feasible_seen, 0);
  EXPECT_GT(infeasible_seen, 0);
}

TEST(FeasibleAssignment, AssignmentRespectsCapsAndAdmissibility) {
  Rng rng(99);
  for (int rep = 0; rep < 100; ++rep) {
    AssignmentProblem p;
    p.point_count = 7;
    p.sink_count = 3;
    p.admissible.assign(7, {});
    for (int i = 0; i < 7; ++i)
      for (int s = 0; s < 3; ++s)
        if (rng.next_below(3) > 0) p.admissible[i].push_back(s);
    p.sink_caps = {3, 3, 3};
    auto a = feasible_assignment(p);
    if (!a) continue;
    std::vector<long long> load(3, 0);
    for (int i = 0; i < 7; ++i) {
      int s = (*a)[i];
      ASSERT_NE(std::find(p.admissible[i].begin(), p.admissible[i].end(), s),
                p.admissible[i].end());
      ++load[s];
    }
    for (int s = 0; s < 3; ++s) ASSERT_LE(load[s], p.sink_caps[s]);
  }
}
