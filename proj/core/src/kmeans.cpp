#include "fluidmatch/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

namespace {

double sq_dist(const OdPoint& a, const OdPoint& b) noexcept {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

std::vector<OdPoint> seed_plus_plus(const std::vector<OdPoint>& pts, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<OdPoint> centers;
  std::vector<bool> taken(pts.size(), false);
  std::size_t first = std::min(pts.size() - 1, static_cast<std::size_t>(unit(rng) * pts.size()));
  centers.push_back(pts[first]);
  taken[first] = true;

  std::vector<double> d2(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) d2[i] = sq_dist(pts[i], centers[0]);
  while (centers.size() < n) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick = pts.size();
    if (total > 0.0) {
      double target = unit(rng) * total;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (d2[i] <= 0.0) continue;
        pick = i;
        target -= d2[i];
        if (target < 0.0) break;
      }
    } else {
      // Every remaining point coincides with a centre; take the next unused one.
      pick = static_cast<std::size_t>(std::find(taken.begin(), taken.end(), false) - taken.begin());
    }
    taken[pick] = true;
    centers.push_back(pts[pick]);
    for (std::size_t i = 0; i < pts.size(); ++i) d2[i] = std::min(d2[i], sq_dist(pts[i], centers.back()));
  }
  return centers;
}

}  // namespace

OdPoint od_point(const TripRecord& t) noexcept { return {t.origin_x, t.origin_y, t.dest_x, t.dest_y}; }

Clustering cluster_trips(const std::vector<TripRecord>& trips, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("number of clusters must be >= 1");
  if (trips.size() < n) {
    throw ValidationError("cannot form " + std::to_string(n) + " clusters from " + std::to_string(trips.size()) +
                          " trips");
  }
  std::vector<OdPoint> pts;
  pts.reserve(trips.size());
  for (const auto& t : trips) pts.push_back(od_point(t));

  std::mt19937_64 rng(seed);
  Clustering out;
  out.centers = seed_plus_plus(pts, n, rng);
  out.assignment.assign(pts.size(), n);
  double previous = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= 300; ++it) {
    out.iterations = it;
    bool changed = false;
    std::vector<double> dist(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::size_t best = 0;
      double best_d = sq_dist(pts[i], out.centers[0]);
      for (std::size_t c = 1; c < n; ++c) {
        const double d = sq_dist(pts[i], out.centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      changed |= out.assignment[i] != best;
      out.assignment[i] = best;
      dist[i] = best_d;
    }

    out.counts.assign(n, 0);
    for (std::size_t a : out.assignment) ++out.counts[a];
    for (std::size_t c = 0; c < n; ++c) {
      if (out.counts[c] > 0) continue;
      std::size_t far = pts.size();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (out.counts[out.assignment[i]] > 1 && (far == pts.size() || dist[i] > dist[far])) far = i;
      }
      --out.counts[out.assignment[far]];
      out.assignment[far] = c;
      out.counts[c] = 1;
      dist[far] = 0.0;
      changed = true;
    }

    std::vector<OdPoint> sums(n, OdPoint{0, 0, 0, 0});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (int k = 0; k < 4; ++k) sums[out.assignment[i]][k] += pts[i][k];
    }
    for (std::size_t c = 0; c < n; ++c) {
      for (int k = 0; k < 4; ++k) out.centers[c][k] = sums[c][k] / static_cast<double>(out.counts[c]);
    }

    out.inertia = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) out.inertia += sq_dist(pts[i], out.centers[out.assignment[i]]);
    const bool flat = std::isfinite(previous) &&
                      std::abs(previous - out.inertia) <= 1e-6 * std::max(previous, std::numeric_limits<double>::min());
    previous = out.inertia;
    if (!changed || flat) break;
  }
  return out;
}

}  // namespace fluidmatch
