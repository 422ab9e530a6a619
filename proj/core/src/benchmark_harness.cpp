#include "fluidmatch/benchmark_harness.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <thread>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

std::vector<double> sample_lambda0(const MatchingInstance& instance, const std::string& instance_id,
                                   std::uint64_t seed) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char ch : instance_id) words.push_back(ch);
  std::seed_seq seq(words.begin(), words.end());
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> lambda(instance.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    lambda[i] = instance.lambda_lower[i] + (instance.lambda_upper[i] - instance.lambda_lower[i]) * unit(rng);
  }
  return lambda;
}

BenchmarkTable run_benchmark(const std::vector<BenchmarkInstance>& instances, const std::vector<SolverConfig>& solvers,
                             const std::vector<std::uint64_t>& seeds, const BenchmarkOptions& options) {
  if (instances.empty()) throw ValidationError("benchmark needs at least one instance");
  if (solvers.empty()) throw ValidationError("benchmark needs at least one solver");
  if (seeds.empty()) throw ValidationError("benchmark needs at least one seed");
  for (const auto& s : solvers) {
    if (s.solver == PricingSolver::PG && !(s.step0 > 0.0)) throw ValidationError("PG step0 must be > 0");
  }

  BenchmarkTable table;
  for (const auto& inst : instances) {
    for (const auto& s : solvers) {
      for (std::uint64_t seed : seeds) {
        BenchmarkCell cell;
        cell.instance_id = inst.id;
        cell.config = s;
        cell.seed = seed;
        table.cells.push_back(std::move(cell));
      }
    }
  }

  const std::size_t per_instance = solvers.size() * seeds.size();
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < table.cells.size(); k = next++) {
      BenchmarkCell& cell = table.cells[k];
      // Each cell owns its copies so nothing is shared between workers.
      const BenchmarkInstance inst = instances[k / per_instance];
      try {
        const std::vector<double> lambda0 = sample_lambda0(inst.matching, inst.id, cell.seed);
        const PricingResult r = cell.config.solver == PricingSolver::MM
                                    ? mm_solve(inst.matching, inst.demand, lambda0, options.pricing)
                                    : pg_solve(inst.matching, inst.demand, lambda0, cell.config.step0, options.pricing);
        cell.time_s = r.wall_time;
        cell.iters = r.iterations;
        cell.objective = r.objective;
        cell.converged = r.converged;
        cell.time_capped = r.time_capped;
        cell.trajectory = r.trajectory;
      } catch (const std::exception& e) {
        cell.error = e.what();
        cell.objective = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, table.cells.size()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  for (std::size_t start = 0; start < table.cells.size(); start += seeds.size()) {
    BenchmarkAggregate agg;
    agg.instance_id = table.cells[start].instance_id;
    agg.config = table.cells[start].config;
    for (std::size_t k = start; k < start + seeds.size(); ++k) {
      const BenchmarkCell& c = table.cells[k];
      if (!c.error.empty()) continue;
      ++agg.runs;
      agg.mean_time_s += c.time_s;
      agg.mean_iters += static_cast<double>(c.iters);
      agg.mean_objective += c.objective;
    }
    if (agg.runs > 0) {
      agg.mean_time_s /= static_cast<double>(agg.runs);
      agg.mean_iters /= static_cast<double>(agg.runs);
      agg.mean_objective /= static_cast<double>(agg.runs);
    } else {
      agg.mean_objective = std::numeric_limits<double>::quiet_NaN();
    }
    table.aggregates.push_back(agg);
  }
  return table;
}

}  // namespace fluidmatch
