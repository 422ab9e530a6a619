#include "fluidmatch/concavity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "fluidmatch/closed_form.hpp"
#include "fluidmatch/error.hpp"
#include "fluidmatch/fluid_lp.hpp"

namespace fluidmatch {

Matrix matching_efficiency(const MatchingInstance& instance) {
  const std::size_t n = instance.size();
  Matrix e(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      e(i, j) = i == j ? 0.5 : 1.0 - instance.pair_cost(i, j) / (instance.solo_cost[i] + instance.solo_cost[j]);
    }
  }
  return e;
}

double critical_efficiency(const Matrix& efficiency, int k) {
  if (k < 1) throw ValidationError("critical efficiency index must be >= 1");
  const std::size_t n = efficiency.rows();
  if (static_cast<std::size_t>(k) > n) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.assign(efficiency.row(i).begin(), efficiency.row(i).end());
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end(), std::greater<>());
    best = std::max(best, row[k - 1]);
  }
  return best;
}

double critical_efficiency(const MatchingInstance& instance, int k) {
  return critical_efficiency(matching_efficiency(instance), k);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ConcaveCertified: return "ConcaveCertified";
    case Verdict::WeaklyConcaveCertified: return "WeaklyConcaveCertified";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::KnownViolationWitness: return "KnownViolationWitness";
  }
  return "?";
}

std::string_view to_string(ConcavityRule r) {
  switch (r) {
    case ConcavityRule::LinearInfinitePatience: return "LinearInfinitePatience";
    case ConcavityRule::SingleType: return "SingleType";
    case ConcavityRule::TwoTypeEqualPatience: return "TwoTypeEqualPatience";
    case ConcavityRule::TwoTypePatienceRatioBelowThree: return "TwoTypePatienceRatioBelowThree";
    case ConcavityRule::TwoTypeTauNonpositive: return "TwoTypeTauNonpositive";
    case ConcavityRule::TwoTypeTauThreshold: return "TwoTypeTauThreshold";
    case ConcavityRule::TwoTypeEfficiencyThreshold: return "TwoTypeEfficiencyThreshold";
    case ConcavityRule::TwoTypePerfectEfficiencyUnbounded: return "TwoTypePerfectEfficiencyUnbounded";
    case ConcavityRule::EqualPatienceThirdEfficiency: return "EqualPatienceThirdEfficiency";
    case ConcavityRule::MixedPatienceSecondEfficiency: return "MixedPatienceSecondEfficiency";
    case ConcavityRule::EqualPatienceFourthEfficiency: return "EqualPatienceFourthEfficiency";
    case ConcavityRule::BoundedPatienceRatioThirdEfficiency: return "BoundedPatienceRatioThirdEfficiency";
    case ConcavityRule::ThreeTypeEqualPatience: return "ThreeTypeEqualPatience";
  }
  return "?";
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

bool all_equal(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double t) { return t == v.front(); });
}

// Per-type bound theta_i * e / (1 - 2e) used by the general-N rules.
RuleCheck efficiency_rule(const MatchingInstance& inst, ConcavityRule rule, bool applicable, double e, int k) {
  RuleCheck chk{rule, applicable, false, {}, {}};
  if (!applicable) return chk;
  if (e >= 0.5) {
    chk.detail = "e_(" + std::to_string(k) + ") = 0.5, no finite bound";
    return chk;
  }
  chk.satisfied = true;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const double bound = inst.theta[i] * e / (1.0 - 2.0 * e);
    chk.required_lower_bounds.push_back(bound);
    if (!(inst.lambda_lower[i] > bound)) chk.satisfied = false;
  }
  chk.detail = "e_(" + std::to_string(k) + ") = " + fmt(e);
  return chk;
}

// Two types ordered so that `lo` is the more patient one.
struct TwoTypeView {
  std::size_t lo = 0;
  std::size_t hi = 1;
  double t1, t2, c1, c2, c12;
};

TwoTypeView ordered(const MatchingInstance& inst) {
  TwoTypeView v;
  if (inst.theta[0] > inst.theta[1]) {
    v.lo = 1;
    v.hi = 0;
  }
  v.t1 = inst.theta[v.lo];
  v.t2 = inst.theta[v.hi];
  v.c1 = inst.solo_cost[v.lo];
  v.c2 = inst.solo_cost[v.hi];
  v.c12 = inst.pair_cost(0, 1);
  return v;
}

std::vector<double> bound_on(std::size_t n, std::size_t idx, double value) {
  std::vector<double> b(n, 0.0);
  b[idx] = value;
  return b;
}

// Walks lambda = (lambda_2 + theta_1, lambda_2) with lambda_2 doubling from the
// bottom of the box until delta2 >= 0, so both y2-zero conditions hold.
std::optional<ViolationWitness> unbounded_region_witness(const MatchingInstance& inst, const TwoTypeView& v) {
  MatchingInstance sorted = make_two_type_instance(v.t1, v.t2, v.c1, v.c2, v.c12, 1e-300, 1e300);
  double l2 = std::max({inst.lambda_lower[v.hi], inst.lambda_lower[v.lo] - v.t1, 1e-6});
  for (int it = 0; it < 200; ++it, l2 *= 2.0) {
    const double l1 = l2 + v.t1;
    if (l1 > inst.lambda_upper[v.lo] || l2 > inst.lambda_upper[v.hi]) return std::nullopt;
    const std::vector<double> lam_sorted{l1, l2};
    if (two_type_indicators(sorted, lam_sorted).delta2 < 0.0) continue;
    ViolationWitness w;
    w.lambda.assign(2, 0.0);
    w.lambda[v.lo] = l1;
    w.lambda[v.hi] = l2;
    const FluidSolution s = solve_fluid_lp(inst, w.lambda);
    w.y = s.y;
    w.detail = "delta2 >= 0 and delta3 = 0: the less patient type has no unmatched agents";
    return w;
  }
  return std::nullopt;
}

}  // namespace

ConcavityCertificate certify(const MatchingInstance& inst) {
  inst.validate();
  const std::size_t n = inst.size();
  const Matrix eff = matching_efficiency(inst);

  ConcavityCertificate cert;
  for (int k = 1; k <= static_cast<int>(n) + 1; ++k) cert.critical_eff.push_back(critical_efficiency(eff, k));

  auto accept = [&](const RuleCheck& chk, Verdict verdict) {
    cert.checks.push_back(chk);
    if (!chk.satisfied) return false;
    cert.verdict = verdict;
    cert.rule = chk.rule;
    cert.required_lower_bounds = chk.required_lower_bounds;
    return true;
  };

  const bool linear = std::all_of(inst.theta.begin(), inst.theta.end(), [](double t) { return t == 0.0; });
  if (accept({ConcavityRule::LinearInfinitePatience, linear, linear, {}, {}}, Verdict::ConcaveCertified)) {
    return cert;
  }
  if (accept({ConcavityRule::SingleType, n == 1, n == 1, {}, {}}, Verdict::ConcaveCertified)) return cert;

  const bool equal_theta = all_equal(inst.theta);
  if (n == 2) {
    if (accept({ConcavityRule::TwoTypeEqualPatience, equal_theta, equal_theta, {}, {}}, Verdict::ConcaveCertified)) {
      return cert;
    }
  }

  const double theta_min = *std::min_element(inst.theta.begin(), inst.theta.end());
  const double theta_max = *std::max_element(inst.theta.begin(), inst.theta.end());

  if (accept(efficiency_rule(inst, ConcavityRule::EqualPatienceThirdEfficiency, equal_theta, cert.critical_eff[2], 3),
             Verdict::ConcaveCertified) ||
      accept(efficiency_rule(inst, ConcavityRule::MixedPatienceSecondEfficiency, !equal_theta,
                             cert.critical_eff[1], 2),
             Verdict::ConcaveCertified)) {
    return cert;
  }

  if (n == 2) {
    const TwoTypeView v = ordered(inst);
    cert.relabeled = v.lo == 1;
    const double tau1 = v.c1 * (v.t2 - 3.0 * v.t1) + 2.0 * v.c2 * v.t2 - 2.0 * v.c12 * v.t2;
    const double excess = 2.0 * v.c12 - v.c1 - v.c2;
    const double tau2 = tau1 * tau1 - 8.0 * v.c1 * excess * v.t1 * (v.t1 + v.t2);
    cert.tau1 = tau1;
    cert.tau2 = tau2;
    const double e12 = eff(0, 1);
    // Perfect efficiency up to rounding of the stored costs.
    const bool perfect = std::abs(excess) <= 1e-12 * (v.c1 + v.c2 + v.c12);
    const double lower2 = inst.lambda_lower[v.hi];

    const bool ratio_below_three = v.t2 < 3.0 * v.t1;
    if (accept({ConcavityRule::TwoTypePatienceRatioBelowThree, ratio_below_three, ratio_below_three, {}, {}},
               Verdict::WeaklyConcaveCertified)) {
      return cert;
    }

    const bool tau_nonpositive = tau1 <= 0.0 || tau2 < 0.0;
    if (accept({ConcavityRule::TwoTypeTauNonpositive, tau_nonpositive, tau_nonpositive, {},
                "tau1 = " + fmt(tau1) + ", tau2 = " + fmt(tau2)},
               Verdict::WeaklyConcaveCertified)) {
      return cert;
    }

    RuleCheck tau_threshold{ConcavityRule::TwoTypeTauThreshold, !tau_nonpositive, false, {}, {}};
    if (tau_threshold.applicable) {
      if (perfect) {
        tau_threshold.detail = "2 c12 - c1 - c2 = 0, no finite bound";
      } else {
        const double bound = (tau1 + std::sqrt(tau2)) / (4.0 * excess);
        tau_threshold.required_lower_bounds = bound_on(2, v.hi, bound);
        tau_threshold.satisfied = lower2 > bound;
        tau_threshold.detail = "lambda_lower of the less patient type must exceed " + fmt(bound);
      }
    }
    if (accept(tau_threshold, Verdict::WeaklyConcaveCertified)) return cert;

    RuleCheck eff_threshold{ConcavityRule::TwoTypeEfficiencyThreshold, !ratio_below_three, false, {}, {}};
    if (eff_threshold.applicable) {
      if (perfect) {
        eff_threshold.detail = "e(1,2) = 0.5, no finite bound";
      } else {
        const double bound = v.t2 / (4.0 * (1.0 - 2.0 * e12));
        eff_threshold.required_lower_bounds = bound_on(2, v.hi, bound);
        eff_threshold.satisfied = lower2 > bound;
        eff_threshold.detail = "lambda_lower of the less patient type must exceed " + fmt(bound);
      }
    }
    if (accept(eff_threshold, Verdict::WeaklyConcaveCertified)) return cert;

    RuleCheck unbounded{ConcavityRule::TwoTypePerfectEfficiencyUnbounded,
                        tau1 > 0.0 && perfect && v.t1 != v.t2, false, {}, {}};
    if (unbounded.applicable) {
      cert.witness = unbounded_region_witness(inst, v);
      unbounded.satisfied = cert.witness.has_value();
      unbounded.detail = unbounded.satisfied ? "no lower bound excludes points with y2 = 0"
                                             : "no lower bound excludes y2 = 0, but the box avoids the witness ray";
    }
    cert.checks.push_back(unbounded);
    if (unbounded.satisfied) {
      cert.verdict = Verdict::KnownViolationWitness;
      cert.rule = unbounded.rule;
    }
    return cert;
  }

  const bool three_equal = n == 3 && equal_theta;
  if (accept({ConcavityRule::ThreeTypeEqualPatience, three_equal, three_equal, {}, {}},
             Verdict::WeaklyConcaveCertified) ||
      accept(efficiency_rule(inst, ConcavityRule::EqualPatienceFourthEfficiency, equal_theta, cert.critical_eff[3], 4),
             Verdict::WeaklyConcaveCertified) ||
      accept(efficiency_rule(inst, ConcavityRule::BoundedPatienceRatioThirdEfficiency, theta_max < 2.0 * theta_min,
                             cert.critical_eff[2], 3),
             Verdict::WeaklyConcaveCertified)) {
    return cert;
  }
  return cert;
}

std::vector<double> default_steps(std::span<const double> lambda) {
  std::vector<double> h(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) h[i] = 1e-3 * std::max(1.0, lambda[i]);
  return h;
}

HessianEstimate numerical_hessian(const MatchingInstance& instance, std::span<const double> lambda, double step) {
  check_rates(instance, lambda);
  const std::size_t n = instance.size();
  HessianEstimate est;
  est.steps = step > 0.0 ? std::vector<double>(n, step) : default_steps(lambda);
  for (std::size_t i = 0; i < n; ++i) {
    if (lambda[i] - 2.0 * est.steps[i] < instance.lambda_lower[i] ||
        lambda[i] + 2.0 * est.steps[i] > instance.lambda_upper[i]) {
      throw ValidationError("step too large for box in coordinate " + std::to_string(i));
    }
  }

  std::vector<double> p(lambda.begin(), lambda.end());
  auto at = [&](std::size_t i, double di, std::size_t j, double dj) {
    p[i] += di;
    p[j] += dj;
    const double c = cost(instance, p);
    p[i] -= di;
    p[j] -= dj;
    return c;
  };

  const double c0 = cost(instance, p);
  est.hessian = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = est.steps[i];
    const double up = at(i, h, i, 0.0);
    const double down = at(i, -h, i, 0.0);
    est.hessian(i, i) = (up - 2.0 * c0 + down) / (h * h);
    if (std::abs((up - c0) / h - (c0 - down) / h) > 10.0 * h) est.smooth = false;
    for (std::size_t j = 0; j < i; ++j) {
      const double k = est.steps[j];
      const double v = (at(i, h, j, k) - at(i, h, j, -k) - at(i, -h, j, k) + at(i, -h, j, -k)) / (4.0 * h * k);
      est.hessian(i, j) = v;
      est.hessian(j, i) = v;
    }
  }
  est.eigenvalues = symmetric_eigenvalues(est.hessian);
  return est;
}

OneSidedPartials one_sided_partials(const MatchingInstance& instance, std::span<const double> lambda,
                                    std::size_t coord, double step) {
  check_rates(instance, lambda);
  if (coord >= instance.size()) throw ValidationError("coordinate out of range");
  OneSidedPartials out;
  out.step = step > 0.0 ? step : 1e-3 * std::max(1.0, lambda[coord]);
  const double h = out.step;
  if (lambda[coord] - h < instance.lambda_lower[coord] || lambda[coord] + h > instance.lambda_upper[coord]) {
    throw ValidationError("lambda +/- step leaves the box in coordinate " + std::to_string(coord));
  }
  std::vector<double> p(lambda.begin(), lambda.end());
  const double c0 = cost(instance, p);
  p[coord] = lambda[coord] - h;
  const double down = cost(instance, p);
  p[coord] = lambda[coord] + h;
  const double up = cost(instance, p);
  out.left = (c0 - down) / h;
  out.right = (up - c0) / h;
  out.violation = out.left < out.right - 2.0 * h;
  return out;
}

namespace {

double half_sq_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return 0.5 * s;
}

}  // namespace

MidpointProbe::MidpointProbe(const MatchingInstance& instance, std::size_t n_samples, const ProbeOptions& options)
    : seed_(options.seed), tolerance_(options.tolerance) {
  instance.validate();
  const std::size_t n = instance.size();
  std::vector<double> lo = instance.lambda_lower;
  std::vector<double> hi = instance.lambda_upper;
  if (options.box) {
    lo = options.box->first;
    hi = options.box->second;
    if (lo.size() != n || hi.size() != n) throw ValidationError("probe box dimension mismatch");
    if (!in_box(instance, lo) || !in_box(instance, hi)) throw ValidationError("probe box must lie inside the instance box");
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  samples_.resize(n_samples);
  for (auto& s : samples_) {
    s.a.resize(n);
    s.b.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.a[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    for (std::size_t i = 0; i < n; ++i) s.b[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
  }

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n_samples)));
  auto work = [&](unsigned t) {
    std::vector<double> mid(n);
    for (std::size_t k = t; k < samples_.size(); k += threads) {
      auto& s = samples_[k];
      for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (s.a[i] + s.b[i]);
      s.cost_a = cost(instance, s.a);
      s.cost_b = cost(instance, s.b);
      s.cost_mid = cost(instance, mid);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
}

MidpointReport MidpointProbe::check(double rho) const {
  if (rho < 0.0) throw ValidationError("rho must be >= 0");
  MidpointReport r;
  r.seed = seed_;
  r.rho = rho;
  r.tolerance = tolerance_;
  r.samples = samples_.size();
  r.worst_violation = -std::numeric_limits<double>::infinity();
  std::vector<double> mid;
  for (const auto& s : samples_) {
    mid.resize(s.a.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (s.a[i] + s.b[i]);
    const double lhs = s.cost_mid - rho * half_sq_norm(mid);
    const double rhs = 0.5 * ((s.cost_a - rho * half_sq_norm(s.a)) + (s.cost_b - rho * half_sq_norm(s.b)));
    const double gap = rhs - lhs;
    if (gap > tolerance_) {
      ++r.violations;
    } else {
      ++r.passes;
    }
    const bool worse = gap > r.worst_violation ||
                       (gap == r.worst_violation && r.witness &&
                        std::tie(s.a, s.b) < std::tie(r.witness->a, r.witness->b));
    if (worse) {
      r.worst_violation = gap;
      r.witness = s;
    }
  }
  if (r.violations == 0) r.witness.reset();
  if (r.samples == 0) r.worst_violation = 0.0;
  return r;
}

MidpointReport probe_midpoint_concavity(const MatchingInstance& instance, std::size_t n_samples, double rho,
                                        const ProbeOptions& options) {
  if (rho < 0.0) throw ValidationError("rho must be >= 0");
  return MidpointProbe(instance, n_samples, options).check(rho);
}

RhoSearchResult find_weak_concavity_rho(const MatchingInstance& instance, std::size_t n_samples,
                                        const ProbeOptions& options, double rho0, double rho_cap) {
  if (!(rho0 > 0.0)) throw ValidationError("initial rho must be > 0");
  const MidpointProbe probe(instance, n_samples, options);
  RhoSearchResult out;
  double rho = 0.0;
  while (rho <= rho_cap) {
    out.ladder.push_back(rho);
    out.report = probe.check(rho);
    if (out.report.violations == 0) {
      out.found = true;
      out.rho = rho;
      return out;
    }
    rho = rho == 0.0 ? rho0 : 2.0 * rho;
  }
  out.rho = out.ladder.back();
  return out;
}

}  // namespace fluidmatch
