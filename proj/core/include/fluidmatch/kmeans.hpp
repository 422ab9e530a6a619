#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fluidmatch/trips.hpp"

namespace fluidmatch {

/// (origin_x, origin_y, dest_x, dest_y).
using OdPoint = std::array<double, 4>;

OdPoint od_point(const TripRecord& trip) noexcept;

struct Clustering {
  std::vector<std::size_t> assignment;  // cluster of each trip
  std::vector<OdPoint> centers;
  std::vector<std::size_t> counts;
  double inertia = 0.0;
  int iterations = 0;
};

/// K-means on OD points: k-means++ seeding from a seeded mt19937_64, then
/// Lloyd iterations until the relative change in inertia drops below 1e-6,
/// the assignment stops changing, or 300 iterations. A cluster that empties
/// is re-seeded with the point farthest from its centre, so every cluster is
/// non-empty on return. Throws ValidationError if n is 0 or exceeds the
/// number of trips.
Clustering cluster_trips(const std::vector<TripRecord>& trips, std::size_t n, std::uint64_t seed);

}  // namespace fluidmatch
