#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluidmatch/demand.hpp"
#include "fluidmatch/instance.hpp"
#include "fluidmatch/kmeans.hpp"
#include "fluidmatch/matrix.hpp"
#include "fluidmatch/trips.hpp"

namespace fluidmatch {

struct RouteLengths {
  std::vector<double> solo;  // origin to destination, floored at min_length
  Matrix pooled;             // shortest shared route, clamped to >= both solo lengths
};

/// Solo length is the straight-line OD distance. A pooled trip visits both
/// origins before both destinations; its length is the shortest of the four
/// such orderings, raised to at least max(solo_i, solo_j), with the diagonal
/// equal to the solo length.
RouteLengths route_lengths(const std::vector<OdPoint>& centers, double min_length = 0.1);

struct CostStructure {
  std::vector<double> solo_cost;
  Matrix pair_cost;
};

CostStructure derive_costs(const std::vector<OdPoint>& centers, double cost_per_mile, double min_length = 0.1);

struct ThetaSpec {
  enum class Kind { Equal, Uniform };
  Kind kind = Kind::Equal;
  double lo = 1.0;
  double hi = 1.0;

  static ThetaSpec equal(double theta) { return {Kind::Equal, theta, theta}; }
  static ThetaSpec uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
  /// "equal:V" or "uniform:LO,HI".
  static ThetaSpec parse(const std::string& text);
};

std::vector<double> assign_theta(std::size_t n, const ThetaSpec& spec, std::uint64_t seed);

/// A matching instance derived from clustered trips, with linear demand.
struct TypedInstanceBundle {
  MatchingInstance matching;
  std::optional<DemandModel> demand;
  std::vector<OdPoint> centers;
  std::vector<double> counts;  // trips per hour in each cluster
};

struct BundleOptions {
  std::size_t n_types = 10;
  double cost_per_mile = 0.9;
  ThetaSpec theta = ThetaSpec::equal(1.0);
  double lambda_lower = 1e-3;
  /// Length of the observation window the trips cover.
  double hours = 1.0;
  double min_length = 0.1;
  std::uint64_t seed = 0;
};

/// Clusters trips into types (seed), draws theta (seed + 1), sets
/// lambda_upper to the per-hour cluster counts and builds linear demand from
/// the solo lengths.
TypedInstanceBundle build_bundle(const std::vector<TripRecord>& trips, const BundleOptions& options);

/// Synthetic trips at `trips_per_type` per type and `n_types` hotspots, then
/// build_bundle. Used by the benchmark and acceptance suites.
TypedInstanceBundle synthetic_bundle(std::size_t n_types, double cost_per_mile, const ThetaSpec& theta,
                                     std::uint64_t seed, std::size_t trips_per_type = 20);

std::string bundle_to_json(const TypedInstanceBundle& bundle);
/// Requires theta, pair_cost and lambda bounds; solo_cost defaults to the
/// diagonal; demand, centers and counts are optional.
TypedInstanceBundle bundle_from_json(const std::string& text);

void save_bundle(const std::string& path, const TypedInstanceBundle& bundle);
TypedInstanceBundle load_bundle(const std::string& path);

}  // namespace fluidmatch
