#include <benchmark/benchmark.h>

#include "fluidmatch/benchmark_harness.hpp"
#include "fluidmatch/bundle.hpp"
#include "fluidmatch/closed_form.hpp"
#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/pricing.hpp"

using namespace fluidmatch;

namespace {

TypedInstanceBundle bundle_for(std::size_t n) { return synthetic_bundle(n, 0.9, ThetaSpec::equal(1.0), 7); }

void BM_FluidLp(benchmark::State& state) {
  const auto b = bundle_for(static_cast<std::size_t>(state.range(0)));
  const auto lambda = sample_lambda0(b.matching, "bench", 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_fluid_lp(b.matching, lambda).objective);
}
BENCHMARK(BM_FluidLp)->Arg(2)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

// All rates at the lower bound: the slowest starting point for the simplex.
void BM_FluidLpLowerCorner(benchmark::State& state) {
  const auto b = bundle_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_fluid_lp(b.matching, b.matching.lambda_lower).objective);
}
BENCHMARK(BM_FluidLpLowerCorner)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_TwoTypeClosedForm(benchmark::State& state) {
  const auto inst = make_two_type_instance(1.0, 2.0, 1.0, 1.0, 1.01);
  const std::vector<double> lambda{0.1, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(solve_two_type(inst, lambda).solution.objective);
}
BENCHMARK(BM_TwoTypeClosedForm);

void BM_TwoTypeLp(benchmark::State& state) {
  const auto inst = make_two_type_instance(1.0, 2.0, 1.0, 1.0, 1.01);
  const std::vector<double> lambda{0.1, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(solve_fluid_lp(inst, lambda).objective);
}
BENCHMARK(BM_TwoTypeLp);

void BM_MM(benchmark::State& state) {
  const auto b = bundle_for(static_cast<std::size_t>(state.range(0)));
  const auto lambda0 = sample_lambda0(b.matching, "bench", 1);
  long iters = 0;
  for (auto _ : state) iters = mm_solve(b.matching, *b.demand, lambda0).iterations;
  state.counters["iterations"] = static_cast<double>(iters);
}
BENCHMARK(BM_MM)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_PG(benchmark::State& state) {
  const auto b = bundle_for(static_cast<std::size_t>(state.range(0)));
  const auto lambda0 = sample_lambda0(b.matching, "bench", 1);
  long iters = 0;
  for (auto _ : state) iters = pg_solve(b.matching, *b.demand, lambda0, static_cast<double>(state.range(1))).iterations;
  state.counters["iterations"] = static_cast<double>(iters);
}
BENCHMARK(BM_PG)->Args({10, 1})->Args({10, 10})->Args({10, 100})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
