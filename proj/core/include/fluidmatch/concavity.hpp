#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fluidmatch/instance.hpp"
#include "fluidmatch/matrix.hpp"

namespace fluidmatch {

/// e(i,j) = 1 - c(i,j) / (c(i) + c(j)); the diagonal is exactly 0.5.
Matrix matching_efficiency(const MatchingInstance& instance);

/// Largest k-th biggest entry over the rows of the efficiency matrix (k is
/// 1-based, the diagonal counts); 0 when k exceeds the number of types.
double critical_efficiency(const MatchingInstance& instance, int k);
double critical_efficiency(const Matrix& efficiency, int k);

enum class Verdict { ConcaveCertified, WeaklyConcaveCertified, Inconclusive, KnownViolationWitness };

/// Sufficient conditions checked by certify(). Names describe the hypothesis.
enum class ConcavityRule {
  LinearInfinitePatience,              // every theta is 0: cost is linear
  SingleType,                          // N = 1
  TwoTypeEqualPatience,                // N = 2, theta_1 == theta_2: concave
  TwoTypePatienceRatioBelowThree,      // N = 2, theta_2 < 3 theta_1
  TwoTypeTauNonpositive,               // N = 2, tau1 <= 0 or tau2 < 0
  TwoTypeTauThreshold,                 // N = 2, lower bound on the less patient type
  TwoTypeEfficiencyThreshold,          // N = 2, simplified bound through e(1,2)
  TwoTypePerfectEfficiencyUnbounded,   // N = 2, e(1,2) = 0.5, tau1 > 0, unequal theta
  EqualPatienceThirdEfficiency,        // equal theta, bound through e_(3): concave
  MixedPatienceSecondEfficiency,       // unequal theta, bound through e_(2): concave
  EqualPatienceFourthEfficiency,       // equal theta, bound through e_(4)
  BoundedPatienceRatioThirdEfficiency, // theta_max < 2 theta_min, bound through e_(3)
  ThreeTypeEqualPatience,              // N = 3 with equal theta
};

std::string_view to_string(Verdict v);
std::string_view to_string(ConcavityRule r);

/// One evaluated rule: whether its structural hypotheses apply to the
/// instance, whether the box satisfies its lower bounds, and those bounds.
struct RuleCheck {
  ConcavityRule rule;
  bool applicable = false;
  bool satisfied = false;
  std::vector<double> required_lower_bounds;  // per type, strict; empty when none
  std::string detail;
};

struct ViolationWitness {
  std::vector<double> lambda;
  std::vector<double> y;  // LP unmatched rates at lambda
  std::string detail;
};

struct ConcavityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<ConcavityRule> rule;
  /// Two-type scalars, computed after ordering the types by patience.
  std::optional<double> tau1;
  std::optional<double> tau2;
  bool relabeled = false;
  /// critical_eff[k-1] = e_(k) for k = 1..N+1.
  std::vector<double> critical_eff;
  std::vector<double> required_lower_bounds;
  std::optional<ViolationWitness> witness;
  std::vector<RuleCheck> checks;
};

/// Applies the sufficient conditions in order of strength and reports the
/// first that holds on the instance's box. Never throws for a valid instance.
ConcavityCertificate certify(const MatchingInstance& instance);

/// Default finite-difference step along coordinate i: 1e-3 * max(1, lambda_i).
std::vector<double> default_steps(std::span<const double> lambda);

struct HessianEstimate {
  Matrix hessian;
  /// False if, in some coordinate, the backward and forward first differences
  /// disagree by more than 10 * step.
  bool smooth = true;
  std::vector<double> steps;
  std::vector<double> eigenvalues;  // of the symmetric part, ascending
};

/// Central second differences of cost(). `step` <= 0 selects default_steps.
/// lambda must be inside the box by 2 * step in every coordinate.
HessianEstimate numerical_hessian(const MatchingInstance& instance, std::span<const double> lambda,
                                  double step = 0.0);

struct OneSidedPartials {
  double left = 0.0;
  double right = 0.0;
  double step = 0.0;
  /// left < right - 2 * step: a convex kink, which no concave-minus-quadratic
  /// function can have.
  bool violation = false;
};

/// Backward and forward difference quotients of cost() along `coord`.
/// `step` <= 0 selects 1e-3 * max(1, lambda_coord).
OneSidedPartials one_sided_partials(const MatchingInstance& instance, std::span<const double> lambda,
                                    std::size_t coord, double step = 0.0);

struct MidpointSample {
  std::vector<double> a;
  std::vector<double> b;
  double cost_a = 0.0;
  double cost_b = 0.0;
  double cost_mid = 0.0;
};

struct MidpointReport {
  std::uint64_t seed = 0;
  double rho = 0.0;
  double tolerance = 1e-7;
  std::size_t samples = 0;
  std::size_t passes = 0;
  std::size_t violations = 0;
  /// Largest amount by which the midpoint inequality fails (<= 0 if none).
  double worst_violation = 0.0;
  std::optional<MidpointSample> witness;
};

struct ProbeOptions {
  std::uint64_t seed = 0;
  double tolerance = 1e-7;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Sample inside this sub-box instead of the instance box when set.
  std::optional<std::pair<std::vector<double>, std::vector<double>>> box;
};

/// Draws pairs uniformly from the box and checks midpoint concavity of
/// cost(lambda) - rho ||lambda||^2 / 2.
MidpointReport probe_midpoint_concavity(const MatchingInstance& instance, std::size_t n_samples, double rho,
                                        const ProbeOptions& options = {});

/// Evaluates costs at sampled pairs once; re-checks them for any rho.
class MidpointProbe {
 public:
  MidpointProbe(const MatchingInstance& instance, std::size_t n_samples, const ProbeOptions& options = {});

  MidpointReport check(double rho) const;
  const std::vector<MidpointSample>& samples() const noexcept { return samples_; }

 private:
  std::vector<MidpointSample> samples_;
  std::uint64_t seed_;
  double tolerance_;
};

struct RhoSearchResult {
  bool found = false;
  double rho = 0.0;
  std::vector<double> ladder;  // every rho tried
  MidpointReport report;       // at the final rho
};

/// Tries rho = 0, then rho0, 2 rho0, 4 rho0, ... until no sampled pair violates
/// midpoint concavity or rho exceeds rho_cap.
RhoSearchResult find_weak_concavity_rho(const MatchingInstance& instance, std::size_t n_samples,
                                        const ProbeOptions& options = {}, double rho0 = 1e-3,
                                        double rho_cap = 1e6);

}  // namespace fluidmatch
