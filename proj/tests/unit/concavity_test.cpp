#include <gtest/gtest.h>

#include <cmath>

#include "fluidmatch/concavity.hpp"
#include "fluidmatch/error.hpp"
#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/reference_instances.hpp"
#include "generators.hpp"

using namespace fluidmatch;

TEST(Efficiency, Definition) {
  const auto additive = make_two_type_instance(1.0, 2.0, 1.0, 2.0, 3.0);
  EXPECT_NEAR(matching_efficiency(additive)(0, 1), 0.0, 1e-15);
  const auto close = make_two_type_instance(1.0, 8.0, 1.0, 1.0, 1.05);
  const Matrix e = matching_efficiency(close);
  EXPECT_NEAR(e(0, 1), 0.475, 1e-15);
  EXPECT_EQ(e(0, 0), 0.5);
  EXPECT_EQ(e(1, 1), 0.5);
}

TEST(Efficiency, CriticalValues) {
  const auto inst = make_two_type_instance(1.0, 8.0, 1.0, 1.0, 1.05);
  EXPECT_EQ(critical_efficiency(inst, 1), 0.5);
  EXPECT_NEAR(critical_efficiency(inst, 2), 0.475, 1e-15);
  testgen::Rng rng(31);
  const auto three = testgen::random_instance(rng, 3);
  EXPECT_EQ(critical_efficiency(three, 4), 0.0);
  EXPECT_THROW(critical_efficiency(three, 0), ValidationError);
}

TEST(Efficiency, BoundedAndCriticalNonincreasingProperty) {
  testgen::Rng rng(32);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 7));
    const auto inst = testgen::random_instance(rng, n);
    const Matrix e = matching_efficiency(inst);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_LE(e(i, j), 0.5);
    EXPECT_EQ(critical_efficiency(e, 1), 0.5);
    for (int q = 1; q < static_cast<int>(n); ++q) {
      EXPECT_GE(critical_efficiency(e, q), critical_efficiency(e, q + 1));
    }
    EXPECT_EQ(critical_efficiency(e, static_cast<int>(n) + 1), 0.0);
  }
}

TEST(Certify, ThresholdInstance) {
  const auto inst = threshold_kink_two_type();
  const ConcavityCertificate c = certify(inst);
  ASSERT_TRUE(c.tau1 && c.tau2);
  EXPECT_NEAR(*c.tau1, 4.2, 1e-9);
  EXPECT_NEAR(*c.tau2, 10.44, 1e-9);
  EXPECT_NE(c.verdict, Verdict::WeaklyConcaveCertified);  // box starts at 1e-3

  auto above = make_two_type_instance(1.0, 8.0, 1.0, 1.0, 1.05, 18.6, 100.0);
  const ConcavityCertificate ca = certify(above);
  EXPECT_EQ(ca.verdict, Verdict::WeaklyConcaveCertified);
  ASSERT_TRUE(ca.rule);
  EXPECT_EQ(*ca.rule, ConcavityRule::TwoTypeTauThreshold);
  ASSERT_EQ(ca.required_lower_bounds.size(), 2u);
  EXPECT_NEAR(ca.required_lower_bounds[1], 18.57, 0.01);

  auto below = make_two_type_instance(1.0, 8.0, 1.0, 1.0, 1.05, 18.5, 100.0);
  EXPECT_NE(certify(below).verdict, Verdict::WeaklyConcaveCertified);
}

TEST(Certify, PatienceRatioBelowThree) {
  const ConcavityCertificate c = certify(nonconcave_two_type());
  EXPECT_EQ(c.verdict, Verdict::WeaklyConcaveCertified);
  EXPECT_EQ(*c.rule, ConcavityRule::TwoTypePatienceRatioBelowThree);
}

TEST(Certify, ThreeEquallyPatientTypes) {
  testgen::Rng rng(33);
  for (int k = 0; k < 20; ++k) {
    const auto inst = testgen::random_instance(rng, 3, 1.0, true);
    const ConcavityCertificate c = certify(inst);
    EXPECT_TRUE(c.verdict == Verdict::WeaklyConcaveCertified || c.verdict == Verdict::ConcaveCertified);
  }
}

TEST(Certify, PerfectEfficiencyFlagsWitness) {
  const ConcavityCertificate c = certify(perfect_efficiency_two_type());
  EXPECT_EQ(c.verdict, Verdict::KnownViolationWitness);
  EXPECT_EQ(*c.rule, ConcavityRule::TwoTypePerfectEfficiencyUnbounded);
  EXPECT_NEAR(*c.tau1, 5.0, 1e-12);
  ASSERT_TRUE(c.witness);
  EXPECT_LE(solve_fluid_lp(perfect_efficiency_two_type(), c.witness->lambda).y[1], 1e-8);
}

TEST(Certify, InfinitePatienceAndEqualPatienceAreConcave) {
  const ConcavityCertificate lin = certify(make_two_type_instance(0.0, 0.0, 1.0, 1.0, 1.5));
  EXPECT_EQ(lin.verdict, Verdict::ConcaveCertified);
  EXPECT_EQ(*lin.rule, ConcavityRule::LinearInfinitePatience);
  const ConcavityCertificate eq = certify(make_two_type_instance(0.4, 0.4, 1.0, 1.3, 1.5));
  EXPECT_EQ(eq.verdict, Verdict::ConcaveCertified);
  EXPECT_EQ(*eq.rule, ConcavityRule::TwoTypeEqualPatience);
}

TEST(Certify, CriticalEfficienciesRecorded) {
  testgen::Rng rng(34);
  const auto inst = testgen::random_instance(rng, 4);
  const ConcavityCertificate c = certify(inst);
  ASSERT_EQ(c.critical_eff.size(), 5u);
  EXPECT_EQ(c.critical_eff[0], 0.5);
  EXPECT_EQ(c.critical_eff[4], 0.0);
  EXPECT_FALSE(c.checks.empty());
}

TEST(Hessian, SingleTypeSecondDerivative) {
  testgen::Rng rng(35);
  for (int k = 0; k < 30; ++k) {
    const double t = rng.uniform(0.2, 5), c = rng.uniform(0.5, 2), l = rng.uniform(0.5, 5);
    const auto inst = make_instance({t}, Matrix{{c}}, {1e-3}, {100.0});
    const std::vector<double> at{l};
    const HessianEstimate h = numerical_hessian(inst, at);
    EXPECT_NEAR(h.hessian(0, 0), -2 * c * t * t / std::pow(t + 2 * l, 3), 1e-4);
    EXPECT_TRUE(h.smooth);
  }
}

TEST(Hessian, NonconcaveInstances) {
  const std::vector<double> a{0.1, 0.1};
  const HessianEstimate h1 = numerical_hessian(nonconcave_two_type(), a);
  EXPECT_TRUE(h1.smooth);
  EXPECT_NEAR(h1.eigenvalues.back(), 0.03, 0.01);
  const std::vector<double> b{0.80, 1.20, 1.20, 0.01};
  const HessianEstimate h2 = numerical_hessian(nonconcave_equal_patience(), b);
  EXPECT_NEAR(h2.eigenvalues.back(), 0.04, 0.01);
}

TEST(Hessian, SymmetricOnSmoothPointsProperty) {
  testgen::Rng rng(36);
  int smooth = 0;
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    const auto inst = testgen::random_instance(rng, n);
    auto l = testgen::random_rates(rng, inst);
    for (double& v : l) v = std::clamp(v, 0.1, 9.0);
    const HessianEstimate h = numerical_hessian(inst, l);
    if (!h.smooth) continue;
    ++smooth;
    EXPECT_LE(max_abs_difference(h.hessian, h.hessian.transposed()), 1e-4);
  }
  EXPECT_GT(smooth, 10);
}

TEST(Hessian, RejectsStepLeavingBox) {
  const auto inst = make_two_type_instance(1.0, 2.0, 1.0, 1.0, 1.01, 0.1, 1.0);
  const std::vector<double> edge{0.1005, 0.5};
  EXPECT_THROW(numerical_hessian(inst, edge), ValidationError);
}

TEST(Partials, ThresholdKink) {
  const std::vector<double> at{19.5, 18.5};
  const OneSidedPartials p = one_sided_partials(threshold_kink_two_type(), at, 0);
  EXPECT_NEAR(p.left, 0.49986, 1e-4);
  EXPECT_NEAR(p.right, 0.5, 1e-4);
  // Small steps isolate the kink well enough to flag it.
  EXPECT_TRUE(one_sided_partials(threshold_kink_two_type(), at, 0, 1e-5).violation);
}

TEST(Partials, PerfectEfficiencyKinks) {
  const auto inst = perfect_efficiency_two_type();
  const std::vector<double> near{11, 10}, far{10001, 10000};
  const OneSidedPartials a = one_sided_partials(inst, near, 0), b = one_sided_partials(inst, far, 0);
  EXPECT_NEAR(a.left, 0.43574, 1e-4);
  EXPECT_NEAR(a.right, 0.5, 1e-4);
  EXPECT_NEAR(b.left, 0.49988, 1e-4);
  EXPECT_NEAR(b.right, 0.5, 1e-4);
  EXPECT_TRUE(a.violation);
}

TEST(Partials, OutOfBox) {
  const auto inst = make_two_type_instance(1.0, 2.0, 1.0, 1.0, 1.01, 0.1, 1.0);
  const std::vector<double> at{0.5, 0.5};
  EXPECT_THROW(one_sided_partials(inst, at, 0, 1.0), ValidationError);
  EXPECT_THROW(one_sided_partials(inst, at, 5), ValidationError);
}

TEST(Midpoint, EqualPatienceTwoTypesIsConcave) {
  const auto inst = make_two_type_instance(0.3, 0.3, 1.1, 1.1, 1.65, 0.01, 5.0);
  const MidpointReport r = probe_midpoint_concavity(inst, 10000, 0.0, {.seed = 5});
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.samples, 10000u);
  EXPECT_EQ(r.seed, 5u);
}

TEST(Midpoint, ThresholdKinkFoundNearWitness) {
  ProbeOptions opts;
  opts.seed = 1;
  opts.box = std::make_pair(std::vector<double>{19.3, 18.3}, std::vector<double>{19.7, 18.7});
  const MidpointReport r = probe_midpoint_concavity(threshold_kink_two_type(), 4000, 0.0, opts);
  EXPECT_GT(r.violations, 0u);
  ASSERT_TRUE(r.witness);
  EXPECT_GT(r.worst_violation, 1e-7);
}

TEST(Midpoint, DeterministicAcrossThreadCounts) {
  const auto inst = threshold_kink_two_type();
  ProbeOptions one{.seed = 9, .tolerance = 1e-7, .threads = 1, .box = {}};
  ProbeOptions many{.seed = 9, .tolerance = 1e-7, .threads = 4, .box = {}};
  const MidpointReport a = probe_midpoint_concavity(inst, 500, 0.0, one);
  const MidpointReport b = probe_midpoint_concavity(inst, 500, 0.0, many);
  EXPECT_EQ(a.violations, b.violations);
  EXPECT_EQ(a.worst_violation, b.worst_violation);
}

TEST(Midpoint, CertifiedRegionsHaveNoViolationsProperty) {
  testgen::Rng rng(37);
  int concave = 0, weak = 0;
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 3));
    const auto inst = testgen::random_instance(rng, n, 2.5, rng.coin(), 0.05, 3.0);
    const ConcavityCertificate c = certify(inst);
    ProbeOptions opts;
    opts.seed = static_cast<std::uint64_t>(k);
    if (c.verdict == Verdict::ConcaveCertified) {
      ++concave;
      EXPECT_EQ(probe_midpoint_concavity(inst, 2000, 0.0, opts).violations, 0u);
    } else if (c.verdict == Verdict::WeaklyConcaveCertified) {
      ++weak;
      EXPECT_TRUE(find_weak_concavity_rho(inst, 2000, opts).found);
    }
  }
  EXPECT_GT(concave + weak, 10);
}

TEST(RhoSearch, LadderDoublesFromStart) {
  ProbeOptions opts;
  opts.seed = 2;
  opts.box = std::make_pair(std::vector<double>{19.3, 18.3}, std::vector<double>{19.7, 18.7});
  const RhoSearchResult r = find_weak_concavity_rho(threshold_kink_two_type(), 500, opts, 1e-3, 1.0);
  ASSERT_GE(r.ladder.size(), 2u);
  EXPECT_EQ(r.ladder[0], 0.0);
  EXPECT_EQ(r.ladder[1], 1e-3);
  for (std::size_t i = 2; i < r.ladder.size(); ++i) EXPECT_DOUBLE_EQ(r.ladder[i], 2 * r.ladder[i - 1]);
}
