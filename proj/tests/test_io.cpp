#include <gtest/gtest.h>

#include <sstream>

#include "capradii/bench.hpp"
#include "capradii/io.hpp"
#include "capradii/oracle.hpp"
#include "testutil.hpp"

using namespace capradii;

TEST(InstanceIo, MatrixRoundTrip) {
  Instance inst = testutil::random_euclidean(5, 2, {3, 1, 2, 4, 5}, 2, PNorm::lp(2.0));
  std::ostringstream out;
  write_instance_matrix(out, inst);
  std::istringstream in(out.str());
  Instance back = read_instance(in);
  EXPECT_EQ(back.n(), inst.n());
  EXPECT_EQ(back.k, inst.k);
  EXPECT_EQ(back.capacities, inst.capacities);
  EXPECT_FALSE(back.norm.is_l1);
  EXPECT_DOUBLE_EQ(back.norm.p, 2.0);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) EXPECT_DOUBLE_EQ(back.metric.dist(a, b), inst.metric.dist(a, b));
}

TEST(InstanceIo, EuclideanIngestion) {
  std::istringstream in(
      "capradii-instance v1\n"
      "3 1 L1\n"
      "3 3 3\n"
      "euclidean 1\n"
      "0\n1\n2\n");
  Instance inst = read_instance(in);
  EXPECT_DOUBLE_EQ(inst.metric.dist(0, 2), 2.0);
  EXPECT_TRUE(inst.norm.is_l1);
}

TEST(InstanceIo, ErrorsCarryLineNumbers) {
  std::istringstream bad_header("nope v1\n");
  try {
    read_instance(bad_header);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
  }
  std::istringstream bad_cap(
      "capradii-instance v1\n"
      "2 1 L1\n"
      "3 x\n");
  try {
    read_instance(bad_cap);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(SolutionIo, RoundTripPreservesCosts) {
  Instance inst = testutil::line_instance({0.0, 1.0, 5.0, 6.0}, {2, 2, 2, 2}, 2);
  OracleResult opt = optimal(inst);
  std::ostringstream out;
  write_solution(out, opt.witness);
  std::istringstream in(out.str());
  Clustering back = read_solution(in);
  EXPECT_TRUE(validate_solution(inst, back).ok());
  EXPECT_NEAR(evaluate(inst, back, true), opt.opt_cost, 1e-9);
  EXPECT_NEAR(evaluate(inst, back, false), evaluate(inst, opt.witness, false), 1e-9);
}

TEST(SolutionIo, CorruptedMemberIsCaughtByValidation) {
  Instance inst = testutil::line_instance({0.0, 1.0, 5.0, 6.0}, {2, 2, 2, 2}, 2);
  std::istringstream in(
      "capradii-solution v1\n"
      "0 1 2 0 1\n"
      "2 1 2 2 2\n");  // member 2 listed twice, member 3 missing
  Clustering sol = read_solution(in);
  ValidationReport rep = validate_solution(inst, sol);
  ASSERT_FALSE(rep.ok());
}

TEST(GraphIo, ReadsAndValidates) {
  std::istringstream in("3 2\n0 1\n1 2\n");
  VcGraph g = read_vc_graph(in);
  EXPECT_EQ(g.vertex_count, 3);
  EXPECT_EQ(g.edges.size(), 2u);
  std::istringstream dup("3 2\n0 1\n1 0\n");
  EXPECT_THROW(read_vc_graph(dup), ParseError);
}

TEST(BenchConfig, EmptyConfigYieldsHeaderOnlyCsv) {
  std::istringstream in("");
  auto cells = parse_bench_config(in);
  EXPECT_TRUE(cells.empty());
  BenchReport report = run_bench(cells, 2);
  std::ostringstream csv;
  write_bench_csv(csv, report);
  EXPECT_EQ(csv.str(),
            "instance,solver,eps,alpha,budget,seed,best_cost,oracle_cost,ratio,iterations,"
            "successes,wall_ms\n");
}

TEST(BenchConfig, MalformedLineReportsPosition) {
  std::istringstream in("solver = uniform\nbudget 12\n");
  try {
    parse_bench_config(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(BenchConfig, UnknownKeyAndMissingFieldsAreErrors) {
  std::istringstream unknown("solver = uniform\nwat = 3\n");
  EXPECT_THROW(parse_bench_config(unknown), ParseError);
  std::istringstream missing("solver = uniform\nbudget = 10\n");  // no instance/gen
  EXPECT_THROW(parse_bench_config(missing), ParseError);
}

TEST(BenchRun, GeneratedCellHonorsBoundAndValidation) {
  std::istringstream in(
      "id = blobs\n"
      "gen = blobs centers=0,0|10,0 sizes=5,5 spread=0.5 caps=const:5 k=2 gseed=99\n"
      "solver = uniform\n"
      "eps = 0.1\n"
      "budget = 1500\n"
      "seed = 7\n"
      "bound = 3.3\n");
  auto cells = parse_bench_config(in);
  ASSERT_EQ(cells.size(), 1u);
  BenchReport report = run_bench(cells, 1);
  ASSERT_EQ(report.rows.size(), 1u);
  const BenchRow& row = report.rows[0];
  EXPECT_FALSE(row.validation_failed);
  ASSERT_TRUE(row.ratio.has_value());
  EXPECT_GE(*row.ratio, 1.0 - 1e-9);
  EXPECT_LE(*row.ratio, 3.3);
  EXPECT_TRUE(report.clean());
}

TEST(BenchRun, RowsDoNotDependOnWorkerCount) {
  std::string cfg =
      "id = a\n"
      "gen = blobs centers=0,0|9,0 sizes=4,4 spread=0.4 caps=const:4 k=2 gseed=6\n"
      "solver = uniform\neps = 0.2\nbudget = 300\nseed = 2\n"
      "\n"
      "id = b\n"
      "gen = blobs centers=0,0|9,0 sizes=4,4 spread=0.4 caps=uniform:1:6 k=2 gseed=6\n"
      "solver = nonuniform\neps = 0.2\nbudget = 300\nseed = 2\n";
  auto render = [&](int jobs) {
    std::istringstream in(cfg);
    BenchReport rep = run_bench(parse_bench_config(in), jobs);
    for (auto& row : rep.rows) row.wall_ms = 0;
    std::ostringstream out;
    write_bench_csv(out, rep);
    return out.str();
  };
  EXPECT_EQ(render(1), render(3));
}

TEST(BenchRun, UnattainableBoundBreaches) {
  // a sub-1 ratio bound cannot be met by any correct solver output
  std::istringstream in(
      "gen = blobs centers=0,0|10,0 sizes=4,4 spread=0.5 caps=const:4 k=2 gseed=3\n"
      "solver = uniform\n"
      "eps = 0.2\n"
      "budget = 400\n"
      "seed = 1\n"
      "bound = 0.99\n");
  auto cells = parse_bench_config(in);
  BenchReport report = run_bench(cells, 1);
  ASSERT_EQ(report.rows.size(), 1u);
  ASSERT_TRUE(report.rows[0].ratio.has_value());
  EXPECT_TRUE(report.rows[0].bound_breached);
  EXPECT_FALSE(report.clean());
}
