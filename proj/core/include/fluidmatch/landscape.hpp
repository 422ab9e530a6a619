#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fluidmatch/demand.hpp"
#include "fluidmatch/instance.hpp"
#include "fluidmatch/matrix.hpp"

namespace fluidmatch {

/// Profit g sampled on a regular grid over the box of a two-type instance.
struct ObjectiveGrid {
  std::vector<double> axis0;  // lambda_1 values
  std::vector<double> axis1;  // lambda_2 values
  Matrix values;              // values(i, j) = g(axis0[i], axis1[j])
  std::vector<std::string> basis_tags;  // row-major like values
  const std::string& tag(std::size_t i, std::size_t j) const { return basis_tags[i * axis1.size() + j]; }
};

/// resolution points per axis, endpoints included. Requires N = 2 and
/// resolution >= 2. 0 threads picks hardware_concurrency().
ObjectiveGrid scan_objective(const MatchingInstance& instance, const DemandModel& demand, std::size_t resolution,
                             unsigned threads = 0);

struct GridPoint {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<double> lambda;
  double value = 0.0;
};

/// Points strictly above every one of their (up to 8) grid neighbours.
std::vector<GridPoint> strict_local_maxima(const ObjectiveGrid& grid);

struct Kink {
  std::vector<double> lambda;
  std::size_t coord = 0;
  double left = 0.0;   // backward difference of g along coord
  double right = 0.0;  // forward difference
};

/// Between axis-neighbours whose optimal bases differ, bisects for the switch
/// point and keeps it when the one-sided differences of g (step `step`) differ
/// by more than `tolerance`.
std::vector<Kink> locate_kinks(const MatchingInstance& instance, const DemandModel& demand, const ObjectiveGrid& grid,
                               double tolerance = 1e-3, double step = 1e-6);

}  // namespace fluidmatch
