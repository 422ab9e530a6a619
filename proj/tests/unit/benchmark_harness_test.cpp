#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fluidmatch/benchmark_harness.hpp"
#include "fluidmatch/bundle.hpp"
#include "fluidmatch/error.hpp"

using namespace fluidmatch;

namespace {

BenchmarkInstance small(const std::string& id, std::uint64_t seed) {
  auto b = synthetic_bundle(6, 0.9, ThetaSpec::equal(1.0), seed);
  return {id, std::move(b.matching), std::move(*b.demand)};
}

}  // namespace

TEST(Benchmark, OneInstanceFourSolversThreeSeeds) {
  const std::vector<BenchmarkInstance> inst{small("a", 1)};
  const std::vector<SolverConfig> solvers{SolverConfig::mm(), SolverConfig::pg(1), SolverConfig::pg(10),
                                          SolverConfig::pg(100)};
  const std::vector<std::uint64_t> seeds{0, 1, 2};
  const BenchmarkTable t = run_benchmark(inst, solvers, seeds);
  ASSERT_EQ(t.cells.size(), 12u);
  EXPECT_EQ(t.aggregates.size(), 4u);
  for (std::uint64_t s : seeds) {
    double mm = NAN, best_pg = -INFINITY;
    bool all_converged = true;
    for (const auto& c : t.cells) {
      if (c.seed != s) continue;
      EXPECT_TRUE(c.error.empty()) << c.error;
      all_converged = all_converged && c.converged;
      if (c.config.solver == PricingSolver::MM) mm = c.objective;
      else best_pg = std::max(best_pg, c.objective);
    }
    if (all_converged) EXPECT_GE(mm, best_pg - 1e-6);
  }
}

TEST(Benchmark, SharedStartingPointPerSeed) {
  const auto inst = small("x", 2);
  EXPECT_EQ(sample_lambda0(inst.matching, "x", 5), sample_lambda0(inst.matching, "x", 5));
  EXPECT_NE(sample_lambda0(inst.matching, "x", 5), sample_lambda0(inst.matching, "x", 6));
  EXPECT_NE(sample_lambda0(inst.matching, "x", 5), sample_lambda0(inst.matching, "y", 5));
  EXPECT_TRUE(in_box(inst.matching, sample_lambda0(inst.matching, "x", 5)));
}

TEST(Benchmark, DeterministicOrderAcrossThreadCounts) {
  const std::vector<BenchmarkInstance> inst{small("a", 1), small("b", 2)};
  const std::vector<SolverConfig> solvers{SolverConfig::mm(), SolverConfig::pg(10)};
  const std::vector<std::uint64_t> seeds{3, 4};
  BenchmarkOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const BenchmarkTable a = run_benchmark(inst, solvers, seeds, one), b = run_benchmark(inst, solvers, seeds, many);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].instance_id, b.cells[i].instance_id);
    EXPECT_EQ(a.cells[i].seed, b.cells[i].seed);
    EXPECT_EQ(a.cells[i].objective, b.cells[i].objective);
    EXPECT_EQ(a.cells[i].iters, b.cells[i].iters);
  }
  EXPECT_EQ(a.cells.front().instance_id, "a");
  EXPECT_EQ(a.cells.back().instance_id, "b");
}

TEST(Benchmark, EmptyListsRejected) {
  const std::vector<BenchmarkInstance> inst{small("a", 1)};
  const std::vector<std::uint64_t> seeds{0};
  EXPECT_THROW(run_benchmark(inst, {}, seeds), ValidationError);
  EXPECT_THROW(run_benchmark({}, {SolverConfig::mm()}, seeds), ValidationError);
  EXPECT_THROW(run_benchmark(inst, {SolverConfig::mm()}, {}), ValidationError);
}

TEST(Benchmark, TimeCapHonored) {
  const std::vector<BenchmarkInstance> inst{small("a", 1)};
  BenchmarkOptions o;
  o.pricing.time_cap = 0.05;
  o.pricing.eps = 1e-14;
  const std::vector<std::uint64_t> seeds{0};
  const BenchmarkTable t = run_benchmark(inst, {SolverConfig::pg(100)}, seeds, o);
  // One iteration on six types is far below a second.
  for (const auto& c : t.cells) EXPECT_LE(c.time_s, o.pricing.time_cap + 1.0);
}

TEST(Benchmark, CellErrorsRecordedNotThrown) {
  auto bad = small("bad", 1);
  bad.demand = DemandModel::linear({1.0}, {1.0});  // wrong dimension
  const std::vector<BenchmarkInstance> inst{small("ok", 1), bad};
  const std::vector<std::uint64_t> seeds{0};
  const BenchmarkTable t = run_benchmark(inst, {SolverConfig::mm()}, seeds);
  ASSERT_EQ(t.cells.size(), 2u);
  EXPECT_TRUE(t.cells[0].error.empty());
  EXPECT_FALSE(t.cells[1].error.empty());
  EXPECT_TRUE(std::isnan(t.cells[1].objective));
}
