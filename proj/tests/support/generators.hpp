#pragma once

// Hand-rolled random instance generators shared by the property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fluidmatch/instance.hpp"
#include "fluidmatch/matrix.hpp"

namespace testgen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Pair costs that satisfy the cost assumptions: symmetric, c(i,i) = c(i),
// c(i,j) >= max(c(i), c(j)). Efficiencies e(i,j) land in [e_lo, 0.5].
inline fluidmatch::Matrix random_costs(Rng& rng, std::size_t n, double e_lo = -0.5) {
  std::vector<double> solo(n);
  for (auto& c : solo) c = rng.uniform(0.5, 2.0);
  fluidmatch::Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = solo[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double e = rng.uniform(e_lo, 0.5);
      const double v = std::max((1.0 - e) * (solo[i] + solo[j]), std::max(solo[i], solo[j]));
      c(i, j) = c(j, i) = v;
    }
  }
  return c;
}

inline fluidmatch::MatchingInstance random_instance(Rng& rng, std::size_t n, double theta_max_ratio = 20.0,
                                                    bool equal_theta = false, double lo = 1e-3, double hi = 10.0) {
  std::vector<double> theta(n);
  const double base = rng.log_uniform(0.1, 5.0);
  for (auto& t : theta) t = equal_theta ? base : base * rng.uniform(1.0, theta_max_ratio);
  return fluidmatch::make_instance(std::move(theta), random_costs(rng, n), std::vector<double>(n, lo),
                                   std::vector<double>(n, hi));
}

inline std::vector<double> random_rates(Rng& rng, const fluidmatch::MatchingInstance& inst) {
  std::vector<double> l(inst.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    // Log-uniform so that both light and heavy traffic show up.
    l[i] = rng.log_uniform(std::max(inst.lambda_lower[i], 1e-3), inst.lambda_upper[i]);
  }
  return l;
}

}  // namespace testgen
