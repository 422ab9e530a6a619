#include "fluidmatch/demand.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

DemandModel DemandModel::linear(std::vector<double> solo_length, std::vector<double> max_rate) {
  if (solo_length.size() != max_rate.size()) throw ValidationError("demand vectors disagree on the number of types");
  for (std::size_t i = 0; i < solo_length.size(); ++i) {
    if (!std::isfinite(solo_length[i]) || solo_length[i] < 0.0) {
      throw ValidationError("solo_length[" + std::to_string(i) + "] must be finite and >= 0");
    }
    if (!std::isfinite(max_rate[i]) || max_rate[i] <= 0.0) {
      throw ValidationError("max_rate[" + std::to_string(i) + "] must be finite and > 0");
    }
  }
  DemandModel d;
  d.kind_ = Kind::Linear;
  d.solo_length_ = std::move(solo_length);
  d.max_rate_ = std::move(max_rate);
  return d;
}

DemandModel DemandModel::custom(std::vector<ScalarFn> revenue, std::vector<ScalarFn> marginal_revenue,
                                const std::vector<double>& lower, const std::vector<double>& upper,
                                std::uint64_t seed) {
  const std::size_t n = revenue.size();
  if (marginal_revenue.size() != n || lower.size() != n || upper.size() != n) {
    throw ValidationError("custom demand vectors disagree on the number of types");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!revenue[i] || !marginal_revenue[i]) throw ValidationError("custom demand functions must be callable");
    for (int k = 0; k < 100; ++k) {
      const double a = lower[i] + (upper[i] - lower[i]) * unit(rng);
      const double b = lower[i] + (upper[i] - lower[i]) * unit(rng);
      const double ra = revenue[i](a);
      const double rb = revenue[i](b);
      const double rm = revenue[i](0.5 * (a + b));
      const double scale = std::max({1.0, std::abs(ra), std::abs(rb)});
      if (rm < 0.5 * (ra + rb) - 1e-9 * scale) {
        throw ValidationError("revenue of type " + std::to_string(i) + " is not concave between " +
                              std::to_string(a) + " and " + std::to_string(b));
      }
    }
  }
  DemandModel d;
  d.kind_ = Kind::Custom;
  d.revenue_ = std::move(revenue);
  d.marginal_ = std::move(marginal_revenue);
  return d;
}

std::size_t DemandModel::size() const noexcept {
  return kind_ == Kind::Linear ? solo_length_.size() : revenue_.size();
}

double DemandModel::revenue(std::size_t i, double lambda) const {
  if (kind_ == Kind::Linear) return lambda * solo_length_[i] * (1.0 - lambda / max_rate_[i]);
  return revenue_[i](lambda);
}

double DemandModel::marginal_revenue(std::size_t i, double lambda) const {
  if (kind_ == Kind::Linear) return solo_length_[i] * (1.0 - 2.0 * lambda / max_rate_[i]);
  return marginal_[i](lambda);
}

double DemandModel::total_revenue(const std::vector<double>& lambda) const {
  if (lambda.size() != size()) throw ValidationError("rate vector dimension does not match demand model");
  double total = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) total += revenue(i, lambda[i]);
  return total;
}

}  // namespace fluidmatch
