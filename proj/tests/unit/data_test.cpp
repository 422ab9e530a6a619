#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "fluidmatch/bundle.hpp"
#include "fluidmatch/concavity.hpp"
#include "fluidmatch/error.hpp"
#include "fluidmatch/kmeans.hpp"
#include "fluidmatch/trips.hpp"
#include "generators.hpp"

using namespace fluidmatch;

namespace {

TripRecord trip(double ox, double oy, double dx, double dy) { return {ox, oy, dx, dy, std::nullopt}; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fluidmatch_" + name)).string();
}

}  // namespace

TEST(Kmeans, OneClusterPerTrip) {
  const std::vector<TripRecord> trips{trip(0, 0, 1, 1), trip(5, 5, 6, 6), trip(-3, 2, 0, 9)};
  const Clustering c = cluster_trips(trips, 3, 1);
  std::set<std::size_t> used(c.assignment.begin(), c.assignment.end());
  EXPECT_EQ(used.size(), 3u);
  for (std::size_t i = 0; i < trips.size(); ++i) EXPECT_EQ(c.centers[c.assignment[i]], od_point(trips[i]));
  EXPECT_NEAR(c.inertia, 0.0, 1e-12);
}

TEST(Kmeans, TwoGroupsMatchExhaustiveTwoMeans) {
  testgen::Rng rng(51);
  std::vector<TripRecord> trips;
  for (int k = 0; k < 5; ++k) trips.push_back(trip(rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(5, 6), rng.uniform(5, 6)));
  for (int k = 0; k < 5; ++k)
    trips.push_back(trip(rng.uniform(20, 21), rng.uniform(0, 1), rng.uniform(30, 31), rng.uniform(9, 10)));
  // Best split by checking every 2-partition.
  double best = std::numeric_limits<double>::infinity();
  std::array<OdPoint, 2> best_centers{};
  for (unsigned mask = 1; mask < (1u << 10) - 1; ++mask) {
    std::array<OdPoint, 2> sum{};
    std::array<int, 2> cnt{};
    for (int i = 0; i < 10; ++i) {
      const int g = (mask >> i) & 1;
      const OdPoint p = od_point(trips[i]);
      for (int d = 0; d < 4; ++d) sum[g][d] += p[d];
      ++cnt[g];
    }
    for (int g = 0; g < 2; ++g)
      for (int d = 0; d < 4; ++d) sum[g][d] /= cnt[g];
    double inertia = 0;
    for (int i = 0; i < 10; ++i) {
      const OdPoint p = od_point(trips[i]);
      for (int d = 0; d < 4; ++d) inertia += std::pow(p[d] - sum[(mask >> i) & 1][d], 2);
    }
    if (inertia < best) best = inertia, best_centers = sum;
  }
  const Clustering c = cluster_trips(trips, 2, 7);
  EXPECT_NEAR(c.inertia, best, 1e-9);
  for (const OdPoint& center : c.centers) {
    double d = std::numeric_limits<double>::infinity();
    for (const OdPoint& b : best_centers) {
      double m = 0;
      for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(center[k] - b[k]));
      d = std::min(d, m);
    }
    EXPECT_LE(d, 1e-6);
  }
}

TEST(Kmeans, DeterministicBySeed) {
  const auto trips = synth_trips({.trips = 300, .hotspots = 4}, 3);
  EXPECT_EQ(cluster_trips(trips, 6, 11).assignment, cluster_trips(trips, 6, 11).assignment);
}

TEST(Kmeans, FewerTripsThanClusters) {
  const std::vector<TripRecord> trips{trip(0, 0, 1, 1)};
  EXPECT_THROW(cluster_trips(trips, 2, 0), ValidationError);
}

TEST(Costs, IdenticalTypesPoolPerfectly) {
  const OdPoint p{0, 0, 3, 4};
  const CostStructure c = derive_costs({p, p}, 2.0);
  EXPECT_DOUBLE_EQ(c.solo_cost[0], 10.0);
  EXPECT_DOUBLE_EQ(c.pair_cost(0, 0), c.solo_cost[0]);
  EXPECT_DOUBLE_EQ(c.pair_cost(0, 1), 10.0);
  const auto inst = make_instance({1, 1}, c.pair_cost, {1e-3, 1e-3}, {1, 1});
  EXPECT_DOUBLE_EQ(matching_efficiency(inst)(0, 1), 0.5);
}

TEST(Costs, PooledRouteIsShortestOfFourOrderings) {
  // Two trips along the x axis: (0 -> 10) and (2 -> 8). Best shared route is
  // o1 o2 d2 d1 with length 2 + 6 + 2 = 10.
  const RouteLengths r = route_lengths({{0, 0, 10, 0}, {2, 0, 8, 0}});
  EXPECT_DOUBLE_EQ(r.solo[0], 10.0);
  EXPECT_DOUBLE_EQ(r.solo[1], 6.0);
  EXPECT_DOUBLE_EQ(r.pooled(0, 1), 10.0);
  EXPECT_DOUBLE_EQ(r.pooled(1, 0), 10.0);
}

TEST(Costs, FarApartPerpendicularTripsStayAboveSoloLengths) {
  const RouteLengths r = route_lengths({{0, 0, 1, 0}, {100, 100, 100, 101}});
  EXPECT_GE(r.pooled(0, 1), std::max(r.solo[0], r.solo[1]));
  const auto inst = make_instance({1, 1}, derive_costs({{0, 0, 1, 0}, {100, 100, 100, 101}}, 1.0).pair_cost,
                                  {1e-3, 1e-3}, {1, 1});
  EXPECT_LT(matching_efficiency(inst)(0, 1), 0.0);
}

TEST(Costs, DerivedInstancesSatisfyCostAssumptionsProperty) {
  testgen::Rng rng(52);
  for (int k = 0; k < 50; ++k) {
    std::vector<OdPoint> centers(static_cast<std::size_t>(rng.integer(1, 12)));
    for (auto& p : centers)
      for (double& v : p) v = rng.uniform(0, 20);
    const double cpm = rng.uniform(0.5, 1.5);
    const CostStructure c = derive_costs(centers, cpm);
    const std::size_t n = centers.size();
    const auto inst = make_instance(std::vector<double>(n, 1.0), c.pair_cost, std::vector<double>(n, 1e-3),
                                    std::vector<double>(n, 1.0));
    EXPECT_NO_THROW(inst.validate());
    const Matrix e = matching_efficiency(inst);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_LE(e(i, j), 0.5);
  }
}

TEST(Theta, SpecsParseAndReproduce) {
  const ThetaSpec u = ThetaSpec::parse("uniform:0.2,2");
  EXPECT_EQ(u.kind, ThetaSpec::Kind::Uniform);
  const auto a = assign_theta(20, u, 4), b = assign_theta(20, u, 4);
  EXPECT_EQ(a, b);
  for (double t : a) {
    EXPECT_GE(t, 0.2);
    EXPECT_LE(t, 2.0);
  }
  const auto e = assign_theta(5, ThetaSpec::parse("equal:0.5"), 0);
  for (double t : e) EXPECT_EQ(t, 0.5);
  EXPECT_THROW(ThetaSpec::parse("gamma:1"), ValidationError);
}

TEST(Synth, ByteIdenticalCsvForFixedSeed) {
  const SynthSpec spec{.trips = 1000, .hotspots = 5};
  std::ostringstream a, b;
  write_trips_csv(a, synth_trips(spec, 42));
  write_trips_csv(b, synth_trips(spec, 42));
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  write_trips_csv(c, synth_trips(spec, 43));
  EXPECT_NE(a.str(), c.str());
}

TEST(Synth, ZeroSpreadSitsOnHotspots) {
  const auto trips = synth_trips({.trips = 200, .hotspots = 3, .spread = 0.0}, 1);
  std::set<std::array<double, 4>> distinct;
  for (const auto& t : trips) distinct.insert(od_point(t));
  EXPECT_LE(distinct.size(), 3u);
}

TEST(Synth, ClusterCountsNearEqualShares) {
  const std::size_t n_trips = 1000, k = 5;
  const auto trips = synth_trips({.trips = n_trips, .hotspots = k}, 9);
  const Clustering c = cluster_trips(trips, k, 9);
  const double p = 1.0 / k, mean = n_trips * p, sd = std::sqrt(n_trips * p * (1 - p));
  for (std::size_t cnt : c.counts) EXPECT_NEAR(static_cast<double>(cnt), mean, 3 * sd);
}

TEST(Synth, InvalidSpec) {
  EXPECT_THROW(synth_trips({.trips = 0}, 0), ValidationError);
  EXPECT_THROW(synth_trips({.trips = 10, .hotspots = 0}, 0), ValidationError);
  EXPECT_THROW(synth_trips({.trips = 10, .hotspots = 1, .spread = -1}, 0), ValidationError);
}

TEST(TripsCsv, RoundTrip) {
  const auto trips = synth_trips({.trips = 50, .hotspots = 2}, 4);
  const std::string path = temp_path("trips_roundtrip.csv");
  save_trips_csv(path, trips);
  EXPECT_EQ(load_trips_csv(path), trips);
  std::filesystem::remove(path);
}

TEST(TripsCsv, ColumnsInAnyOrderWithoutTimestamp) {
  std::istringstream in("dest_y,dest_x,origin_y,origin_x\n4,3,2,1\n");
  const auto t = read_trips_csv(in);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], trip(1, 2, 3, 4));
}

TEST(TripsCsv, NonNumericCellCitesLine) {
  std::string text = "origin_x,origin_y,dest_x,dest_y\n";
  for (int i = 0; i < 5; ++i) text += "1,2,3,4\n";
  text += "1,2,oops,4\n";  // line 7
  std::istringstream in(text);
  try {
    read_trips_csv(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos);
  }
}

TEST(TripsCsv, EmptyFileAndMissingColumnRejected) {
  std::istringstream empty("");
  EXPECT_THROW(read_trips_csv(empty), ParseError);
  std::istringstream header_only("origin_x,origin_y,dest_x,dest_y\n");
  EXPECT_THROW(read_trips_csv(header_only), ParseError);
  std::istringstream missing("origin_x,origin_y,dest_x\n1,2,3\n");
  EXPECT_THROW(read_trips_csv(missing), ParseError);
}

TEST(Bundle, BuiltFromTrips) {
  const auto trips = synth_trips({.trips = 400, .hotspots = 4, .hours = 2.0}, 6);
  BundleOptions o;
  o.n_types = 4;
  o.hours = 2.0;
  o.theta = ThetaSpec::uniform(0.5, 1.5);
  o.seed = 6;
  const TypedInstanceBundle b = build_bundle(trips, o);
  ASSERT_EQ(b.matching.size(), 4u);
  double total = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(b.matching.lambda_upper[i], b.counts[i]);
    EXPECT_DOUBLE_EQ(b.matching.lambda_lower[i], 1e-3);
    total += b.counts[i];
  }
  EXPECT_NEAR(total, 200.0, 1e-9);
  EXPECT_NO_THROW(b.matching.validate());
  ASSERT_TRUE(b.demand);
  EXPECT_EQ(b.demand->max_rate(), b.matching.lambda_upper);
}

TEST(Bundle, SaveLoadRoundTrip) {
  const TypedInstanceBundle b = synthetic_bundle(5, 1.1, ThetaSpec::uniform(0.2, 2.0), 8);
  const std::string path = temp_path("bundle_roundtrip.json");
  save_bundle(path, b);
  const TypedInstanceBundle r = load_bundle(path);
  std::filesystem::remove(path);
  EXPECT_LE(max_abs_difference(r.matching.pair_cost, b.matching.pair_cost), 1e-12);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(r.matching.theta[i], b.matching.theta[i], 1e-12);
    EXPECT_NEAR(r.matching.solo_cost[i], b.matching.solo_cost[i], 1e-12);
    EXPECT_NEAR(r.matching.lambda_upper[i], b.matching.lambda_upper[i], 1e-12);
    EXPECT_NEAR(r.demand->solo_length()[i], b.demand->solo_length()[i], 1e-12);
    EXPECT_NEAR(r.counts[i], b.counts[i], 1e-12);
    for (int d = 0; d < 4; ++d) EXPECT_NEAR(r.centers[i][d], b.centers[i][d], 1e-12);
  }
}

TEST(Bundle, MalformedJsonRejected) {
  EXPECT_THROW(bundle_from_json("{"), ParseError);
  EXPECT_THROW(bundle_from_json("{\"theta\": [1]}"), ValidationError);
  EXPECT_THROW(bundle_from_json(R"({"theta":[1,1],"pair_cost":[[1,0.5],[0.5,1]],"lambda_lower":[1,1],"lambda_upper":[2,2]})"),
               ValidationError);
  EXPECT_THROW(load_bundle(temp_path("does_not_exist.json")), ValidationError);
}
