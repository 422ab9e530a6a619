#include "fluidmatch/landscape.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "fluidmatch/error.hpp"
#include "fluidmatch/fluid_lp.hpp"

namespace fluidmatch {

namespace {

struct Evaluation {
  double g;
  std::string tag;
};

Evaluation evaluate(const MatchingInstance& instance, const DemandModel& demand, const std::vector<double>& lambda) {
  FluidSolution s = solve_fluid_lp(instance, lambda);
  return {demand.total_revenue(lambda) - s.objective, std::move(s.basis_tag)};
}

double g_at(const MatchingInstance& instance, const DemandModel& demand, const std::vector<double>& lambda) {
  return demand.total_revenue(lambda) - cost(instance, lambda);
}

}  // namespace

ObjectiveGrid scan_objective(const MatchingInstance& instance, const DemandModel& demand, std::size_t resolution,
                             unsigned threads) {
  instance.validate();
  if (instance.size() != 2) throw ValidationError("grid scan needs exactly two types");
  if (demand.size() != 2) throw ValidationError("demand dimension does not match the instance");
  if (resolution < 2) throw ValidationError("grid resolution must be at least 2");

  ObjectiveGrid grid;
  for (std::size_t k = 0; k < resolution; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(resolution - 1);
    grid.axis0.push_back(k + 1 == resolution ? instance.lambda_upper[0]
                                             : instance.lambda_lower[0] + t * (instance.lambda_upper[0] - instance.lambda_lower[0]));
    grid.axis1.push_back(k + 1 == resolution ? instance.lambda_upper[1]
                                             : instance.lambda_lower[1] + t * (instance.lambda_upper[1] - instance.lambda_lower[1]));
  }
  grid.values = Matrix(resolution, resolution);
  grid.basis_tags.resize(resolution * resolution);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next++; idx < resolution * resolution; idx = next++) {
      const std::size_t i = idx / resolution, j = idx % resolution;
      Evaluation e = evaluate(instance, demand, {grid.axis0[i], grid.axis1[j]});
      grid.values(i, j) = e.g;
      grid.basis_tags[idx] = std::move(e.tag);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  return grid;
}

std::vector<GridPoint> strict_local_maxima(const ObjectiveGrid& grid) {
  const std::size_t n0 = grid.axis0.size(), n1 = grid.axis1.size();
  std::vector<GridPoint> out;
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      const double v = grid.values(i, j);
      bool strict = true;
      for (int di = -1; di <= 1 && strict; ++di) {
        for (int dj = -1; dj <= 1 && strict; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto a = static_cast<std::ptrdiff_t>(i) + di, b = static_cast<std::ptrdiff_t>(j) + dj;
          if (a < 0 || b < 0 || a >= static_cast<std::ptrdiff_t>(n0) || b >= static_cast<std::ptrdiff_t>(n1)) continue;
          if (grid.values(a, b) >= v) strict = false;
        }
      }
      if (strict) out.push_back({i, j, {grid.axis0[i], grid.axis1[j]}, v});
    }
  }
  return out;
}

std::vector<Kink> locate_kinks(const MatchingInstance& instance, const DemandModel& demand, const ObjectiveGrid& grid,
                               double tolerance, double step) {
  const std::size_t n0 = grid.axis0.size(), n1 = grid.axis1.size();
  std::vector<Kink> out;
  auto probe = [&](std::vector<double> a, std::vector<double> b, std::size_t coord, std::string tag_a) {
    // Keep the bracket [lo, hi] straddling a basis change along coord.
    double lo = a[coord], hi = b[coord];
    std::vector<double> p = a;
    for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
      p[coord] = 0.5 * (lo + hi);
      if (solve_fluid_lp(instance, p).basis_tag == tag_a) lo = p[coord];
      else hi = p[coord];
    }
    p[coord] = 0.5 * (lo + hi);
    if (p[coord] - step < instance.lambda_lower[coord] || p[coord] + step > instance.lambda_upper[coord]) return;
    const double g0 = g_at(instance, demand, p);
    std::vector<double> q = p;
    q[coord] = p[coord] - step;
    const double left = (g0 - g_at(instance, demand, q)) / step;
    q[coord] = p[coord] + step;
    const double right = (g_at(instance, demand, q) - g0) / step;
    if (std::abs(left - right) > tolerance) out.push_back({p, coord, left, right});
  };
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      if (i + 1 < n0 && grid.tag(i, j) != grid.tag(i + 1, j)) {
        probe({grid.axis0[i], grid.axis1[j]}, {grid.axis0[i + 1], grid.axis1[j]}, 0, grid.tag(i, j));
      }
      if (j + 1 < n1 && grid.tag(i, j) != grid.tag(i, j + 1)) {
        probe({grid.axis0[i], grid.axis1[j]}, {grid.axis0[i], grid.axis1[j + 1]}, 1, grid.tag(i, j));
      }
    }
  }
  return out;
}

}  // namespace fluidmatch
