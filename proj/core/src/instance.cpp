#include "fluidmatch/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

namespace {

std::string at(std::size_t i) { return "[" + std::to_string(i) + "]"; }
std::string at(std::size_t i, std::size_t j) {
  return "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

// Relative slack for the symmetry and diagonal checks, so costs that went
// through a text round trip still validate.
bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

void MatchingInstance::validate() const {
  const std::size_t n = theta.size();
  if (n == 0) throw ValidationError("instance has no agent types");
  if (solo_cost.size() != n || lambda_lower.size() != n || lambda_upper.size() != n) {
    throw ValidationError("instance vectors disagree on the number of types");
  }
  if (pair_cost.rows() != n || pair_cost.cols() != n) {
    throw ValidationError("pair_cost must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(theta[i]) || theta[i] < 0.0) throw ValidationError("theta" + at(i) + " must be finite and >= 0");
    if (!std::isfinite(solo_cost[i]) || solo_cost[i] <= 0.0) {
      throw ValidationError("solo_cost" + at(i) + " must be finite and > 0");
    }
    if (!std::isfinite(lambda_lower[i]) || lambda_lower[i] <= 0.0) {
      throw ValidationError("lambda_lower" + at(i) + " must be > 0");
    }
    if (!std::isfinite(lambda_upper[i]) || lambda_upper[i] < lambda_lower[i]) {
      throw ValidationError("lambda_upper" + at(i) + " must be >= lambda_lower" + at(i));
    }
    if (!close(pair_cost(i, i), solo_cost[i])) {
      throw ValidationError("pair_cost" + at(i, i) + " must equal solo_cost" + at(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double cij = pair_cost(i, j);
      if (!std::isfinite(cij) || cij <= 0.0) throw ValidationError("pair_cost" + at(i, j) + " must be finite and > 0");
      if (!close(cij, pair_cost(j, i))) throw ValidationError("pair_cost is not symmetric at " + at(i, j));
      const double floor = std::max(solo_cost[i], solo_cost[j]);
      if (cij < floor && !close(cij, floor)) {
        throw ValidationError("pair_cost" + at(i, j) + " is below max(solo_cost" + at(i) + ", solo_cost" + at(j) + ")");
      }
    }
  }
}

MatchingInstance make_two_type_instance(double theta1, double theta2, double c1, double c2, double c12,
                                        double lo, double hi) {
  MatchingInstance inst;
  inst.theta = {theta1, theta2};
  inst.solo_cost = {c1, c2};
  inst.pair_cost = Matrix{{c1, c12}, {c12, c2}};
  inst.lambda_lower = {lo, lo};
  inst.lambda_upper = {hi, hi};
  inst.validate();
  return inst;
}

MatchingInstance make_instance(std::vector<double> theta, const Matrix& pair_cost, std::vector<double> lower,
                               std::vector<double> upper) {
  MatchingInstance inst;
  inst.theta = std::move(theta);
  inst.pair_cost = pair_cost;
  inst.solo_cost.resize(pair_cost.rows());
  for (std::size_t i = 0; i < pair_cost.rows() && i < pair_cost.cols(); ++i) inst.solo_cost[i] = pair_cost(i, i);
  inst.lambda_lower = std::move(lower);
  inst.lambda_upper = std::move(upper);
  inst.validate();
  return inst;
}

void check_rates(const MatchingInstance& instance, std::span<const double> lambda) {
  const std::size_t n = instance.size();
  if (lambda.size() != n) {
    throw ValidationError("rate vector has " + std::to_string(lambda.size()) + " entries, instance has " +
                          std::to_string(n) + " types");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(lambda[i]) || lambda[i] <= 0.0) throw ValidationError("lambda" + at(i) + " must be > 0");
    if (lambda[i] < instance.lambda_lower[i] || lambda[i] > instance.lambda_upper[i]) {
      throw ValidationError("lambda" + at(i) + " = " + std::to_string(lambda[i]) + " lies outside [" +
                            std::to_string(instance.lambda_lower[i]) + ", " +
                            std::to_string(instance.lambda_upper[i]) + "]");
    }
  }
}

bool in_box(const MatchingInstance& instance, std::span<const double> lambda) noexcept {
  if (lambda.size() != instance.size()) return false;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] >= instance.lambda_lower[i] && lambda[i] <= instance.lambda_upper[i])) return false;
  }
  return true;
}

std::vector<double> clamp_to_box(const MatchingInstance& instance, std::span<const double> lambda) {
  if (lambda.size() != instance.size()) throw ValidationError("rate vector dimension mismatch");
  std::vector<double> out(lambda.begin(), lambda.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(out[i], instance.lambda_lower[i], instance.lambda_upper[i]);
  }
  return out;
}

}  // namespace fluidmatch
