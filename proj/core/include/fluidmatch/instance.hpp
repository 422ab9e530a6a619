#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fluidmatch/matrix.hpp"

namespace fluidmatch {

/// Agent types, their patience and matching costs, and the admissible box of
/// arrival rates. Rates are per unit time; theta is the abandonment rate in the
/// same unit.
struct MatchingInstance {
  std::vector<double> theta;
  std::vector<double> solo_cost;
  Matrix pair_cost;
  std::vector<double> lambda_lower;
  std::vector<double> lambda_upper;

  std::size_t size() const noexcept { return theta.size(); }

  /// Throws ValidationError unless the cost structure is symmetric, has
  /// c(i,i) = c(i), dominates the solo costs, and the box is positive and ordered.
  void validate() const;
};

/// Convenience constructor for two agent types. The box defaults to [lo, hi]^2.
MatchingInstance make_two_type_instance(double theta1, double theta2, double c1, double c2,
                                        double c12, double lo = 1e-3, double hi = 1e4);

/// Builds an instance whose solo costs are read off the diagonal of `pair_cost`.
MatchingInstance make_instance(std::vector<double> theta, const Matrix& pair_cost,
                               std::vector<double> lower, std::vector<double> upper);

/// Throws ValidationError unless `lambda` has the instance dimension, is strictly
/// positive, and lies inside the box.
void check_rates(const MatchingInstance& instance, std::span<const double> lambda);

bool in_box(const MatchingInstance& instance, std::span<const double> lambda) noexcept;

std::vector<double> clamp_to_box(const MatchingInstance& instance, std::span<const double> lambda);

}  // namespace fluidmatch
