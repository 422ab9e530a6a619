#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fluidmatch/demand.hpp"
#include "fluidmatch/instance.hpp"
#include "fluidmatch/pricing.hpp"

namespace fluidmatch {

struct BenchmarkInstance {
  std::string id;
  MatchingInstance matching;
  DemandModel demand;
};

struct SolverConfig {
  PricingSolver solver = PricingSolver::MM;
  double step0 = 0.0;  // PG only

  static SolverConfig mm() { return {PricingSolver::MM, 0.0}; }
  static SolverConfig pg(double step0) { return {PricingSolver::PG, step0}; }
};

struct BenchmarkCell {
  std::string instance_id;
  SolverConfig config;
  std::uint64_t seed = 0;
  double time_s = 0.0;
  long iters = 0;
  double objective = 0.0;
  bool converged = false;
  bool time_capped = false;
  std::vector<double> trajectory;
  /// Empty on success; the exception message otherwise.
  std::string error;
};

struct BenchmarkAggregate {
  std::string instance_id;
  SolverConfig config;
  std::size_t runs = 0;  // seeds that finished without error
  double mean_time_s = 0.0;
  double mean_iters = 0.0;
  double mean_objective = 0.0;
};

struct BenchmarkTable {
  /// Ordered by instance, then solver as given, then seed as given.
  std::vector<BenchmarkCell> cells;
  std::vector<BenchmarkAggregate> aggregates;
};

struct BenchmarkOptions {
  PricingOptions pricing;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Starting point uniform over the box, a function of (instance id, seed) only,
/// so every solver in a seed starts from the same point.
std::vector<double> sample_lambda0(const MatchingInstance& instance, const std::string& instance_id,
                                   std::uint64_t seed);

/// Runs every (instance, solver, seed) cell, concurrently when threads > 1.
/// Cell errors are recorded, not rethrown. Throws ValidationError when any
/// list is empty.
BenchmarkTable run_benchmark(const std::vector<BenchmarkInstance>& instances, const std::vector<SolverConfig>& solvers,
                             const std::vector<std::uint64_t>& seeds, const BenchmarkOptions& options = {});

}  // namespace fluidmatch
