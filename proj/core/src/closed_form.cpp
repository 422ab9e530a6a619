#include "fluidmatch/closed_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

namespace {

void require_two_types(const MatchingInstance& instance, std::span<const double> lambda) {
  if (instance.size() != 2) throw ValidationError("two-type closed form needs N = 2");
  if (lambda.size() != 2) throw ValidationError("rate vector must have 2 entries");
  if (!(lambda[0] > 0.0) || !(lambda[1] > 0.0)) throw ValidationError("rates must be > 0");
}

// Solutions are assembled from r_i = y_i / theta_i so that theta_i = 0 needs no
// special case: a binding bound reads x(i, j) = lambda_j r_i.
FluidSolution assemble(const MatchingInstance& inst, const Matrix& x, std::array<double, 2> y,
                       std::string tag) {
  FluidSolution s;
  s.x = x;
  s.y = {y[0], y[1]};
  s.objective = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    s.objective += inst.solo_cost[i] * y[i];
    for (std::size_t j = 0; j < 2; ++j) s.objective += inst.pair_cost(i, j) * x(i, j);
  }
  s.basis_tag = std::move(tag);
  return s;
}

FluidSolution all_bounds_binding(const MatchingInstance& inst, std::span<const double> lam, double r1,
                                 double r2, bool self_match_1, std::string tag) {
  Matrix x(2, 2);
  x(0, 0) = self_match_1 ? lam[0] * r1 : 0.0;
  x(0, 1) = lam[1] * r1;
  x(1, 0) = lam[0] * r2;
  x(1, 1) = lam[1] * r2;
  return assemble(inst, x, {inst.theta[0] * r1, inst.theta[1] * r2}, std::move(tag));
}

MatchingInstance swapped(const MatchingInstance& inst) {
  MatchingInstance s = inst;
  std::swap(s.theta[0], s.theta[1]);
  std::swap(s.solo_cost[0], s.solo_cost[1]);
  std::swap(s.lambda_lower[0], s.lambda_lower[1]);
  std::swap(s.lambda_upper[0], s.lambda_upper[1]);
  s.pair_cost = Matrix{{inst.pair_cost(1, 1), inst.pair_cost(1, 0)}, {inst.pair_cost(0, 1), inst.pair_cost(0, 0)}};
  return s;
}

void swap_back(FluidSolution& s) {
  std::swap(s.y[0], s.y[1]);
  s.x = Matrix{{s.x(1, 1), s.x(1, 0)}, {s.x(0, 1), s.x(0, 0)}};
}

}  // namespace

FluidSolution solve_single_type(double theta, double solo_cost, double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be > 0");
  if (!(theta >= 0.0)) throw ValidationError("theta must be >= 0");
  if (!(solo_cost > 0.0)) throw ValidationError("solo cost must be > 0");
  const double denom = theta + 2.0 * lambda;
  FluidSolution s;
  s.x = Matrix(1, 1, lambda * lambda / denom);
  s.y = {lambda * theta / denom};
  s.objective = solo_cost * lambda * (theta + lambda) / denom;
  s.basis_tag = "single-type";
  return s;
}

std::string_view to_string(TwoTypeCase c) {
  switch (c) {
    case TwoTypeCase::NoCross: return "NoCross";
    case TwoTypeCase::FullyMatched: return "FullyMatched";
    case TwoTypeCase::NoSelfMatch1: return "NoSelfMatch1";
    case TwoTypeCase::Y2Zero: return "Y2Zero";
  }
  return "?";
}

std::string_view to_string(EqualPatienceCase c) {
  return c == EqualPatienceCase::Decoupled ? "Decoupled" : "Pooled";
}

TwoTypeIndicators two_type_indicators(const MatchingInstance& inst, std::span<const double> lam) {
  require_two_types(inst, lam);
  const double t1 = inst.theta[0];
  const double t2 = inst.theta[1];
  if (t1 > t2) throw ValidationError("indicators need theta_1 <= theta_2; relabel the types first");
  const double c1 = inst.solo_cost[0];
  const double c2 = inst.solo_cost[1];
  const double c12 = inst.pair_cost(0, 1);
  const double l1 = lam[0];
  const double l2 = lam[1];

  const double own2 = c2 * (t2 + l2) / (t2 + 2.0 * l2);
  TwoTypeIndicators d;
  d.delta1 = c1 * (t1 + l1) / (t1 + 2.0 * l1) + own2 - c12;
  d.delta2 = 0.5 * c1 * (1.0 - t1 * (t2 + l1 + 2.0 * l2) / (l2 * (t2 + 2.0 * l2))) + own2 - c12;
  d.delta3 = l1 - l2 - t1;
  return d;
}

TwoTypeCase classify(const TwoTypeIndicators& d) {
  if (d.delta1 <= 0.0) return TwoTypeCase::NoCross;
  if (d.delta2 < 0.0) return TwoTypeCase::FullyMatched;
  if (d.delta3 < 0.0) return TwoTypeCase::NoSelfMatch1;
  return TwoTypeCase::Y2Zero;
}

TwoTypeSolution solve_two_type(const MatchingInstance& instance, std::span<const double> lambda) {
  require_two_types(instance, lambda);
  if (instance.theta[0] > instance.theta[1]) {
    const MatchingInstance s = swapped(instance);
    const std::array<double, 2> lam{lambda[1], lambda[0]};
    TwoTypeSolution out = solve_two_type(s, lam);
    swap_back(out.solution);
    out.relabeled = true;
    return out;
  }

  const double t1 = instance.theta[0];
  const double t2 = instance.theta[1];
  const double l1 = lambda[0];
  const double l2 = lambda[1];

  TwoTypeSolution out;
  out.indicators = two_type_indicators(instance, lambda);
  out.case_id = classify(out.indicators);
  const std::string tag{to_string(out.case_id)};

  switch (out.case_id) {
    case TwoTypeCase::NoCross: {
      const double r1 = l1 / (t1 + 2.0 * l1);
      const double r2 = l2 / (t2 + 2.0 * l2);
      Matrix x(2, 2);
      x(0, 0) = l1 * r1;
      x(1, 1) = l2 * r2;
      out.solution = assemble(instance, x, {t1 * r1, t2 * r2}, tag);
      break;
    }
    case TwoTypeCase::FullyMatched: {
      const double d = 2.0 * (l1 + l2) * (l1 + l2) + t1 * (l1 + 2.0 * l2) + t2 * (l2 + 2.0 * l1) + t1 * t2;
      out.solution = all_bounds_binding(instance, lambda, l1 * (t2 + l1 + l2) / d, l2 * (t1 + l1 + l2) / d,
                                        true, tag);
      break;
    }
    case TwoTypeCase::NoSelfMatch1: {
      // The type-2 numerator carries (theta_1 + lambda_2 - lambda_1): it is
      // what the two flow rows give once x(1,1) = 0, and it is positive
      // exactly when delta3 < 0.
      const double d = 2.0 * l2 * l2 + t1 * (l1 + 2.0 * l2) + t2 * l2 + t1 * t2;
      out.solution = all_bounds_binding(instance, lambda, l1 * (t2 + l1 + l2) / d, l2 * (t1 + l2 - l1) / d,
                                        false, tag);
      break;
    }
    case TwoTypeCase::Y2Zero: {
      double x11 = 0.5 * (l1 - l2 - t1);
      double y1 = t1;
      if (x11 < 0.0) {
        if (x11 < -1e-8 * std::max(1.0, l1)) {
          throw SolverError("Y2Zero case with x(1,1) = " + std::to_string(x11) + " < 0");
        }
        x11 = 0.0;
        y1 = l1 - l2;
      }
      Matrix x(2, 2);
      x(0, 0) = x11;
      x(0, 1) = l2;
      out.solution = assemble(instance, x, {y1, 0.0}, tag);
      break;
    }
  }
  return out;
}

EqualPatienceSolution solve_two_type_equal_patience(const MatchingInstance& instance,
                                                    std::span<const double> lambda) {
  require_two_types(instance, lambda);
  if (instance.theta[0] != instance.theta[1]) throw ValidationError("equal-patience closed form needs theta_1 == theta_2");
  const double t = instance.theta[0];
  const double c1 = instance.solo_cost[0];
  const double c2 = instance.solo_cost[1];
  const double c12 = instance.pair_cost(0, 1);
  const double l1 = lambda[0];
  const double l2 = lambda[1];

  EqualPatienceSolution out;
  out.delta1 = two_type_indicators(instance, lambda).delta1;
  out.decoupled_cost = c1 * l1 * (t + l1) / (t + 2.0 * l1) + c2 * l2 * (t + l2) / (t + 2.0 * l2);
  out.pooled_cost = (c1 * l1 * (t + l1) + c2 * l2 * (t + l2) + 2.0 * c12 * l1 * l2) / (t + 2.0 * l1 + 2.0 * l2);

  if (out.delta1 <= 0.0) {
    out.case_id = EqualPatienceCase::Decoupled;
    const double r1 = l1 / (t + 2.0 * l1);
    const double r2 = l2 / (t + 2.0 * l2);
    Matrix x(2, 2);
    x(0, 0) = l1 * r1;
    x(1, 1) = l2 * r2;
    out.solution = assemble(instance, x, {t * r1, t * r2}, "Decoupled");
  } else {
    out.case_id = EqualPatienceCase::Pooled;
    const double r = 1.0 / (t + 2.0 * l1 + 2.0 * l2);
    out.solution = all_bounds_binding(instance, lambda, l1 * r, l2 * r, true, "Pooled");
  }
  return out;
}

}  // namespace fluidmatch
