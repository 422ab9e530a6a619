#include "fluidmatch/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

namespace {

double dist(double ax, double ay, double bx, double by) { return std::hypot(ax - bx, ay - by); }

// Both pickups happen before either drop-off.
double pooled_route(const OdPoint& a, const OdPoint& b) {
  const double pickups = dist(a[0], a[1], b[0], b[1]);
  const double ab = pickups + dist(b[0], b[1], a[2], a[3]) + dist(a[2], a[3], b[2], b[3]);  // oa ob da db
  const double ba = pickups + dist(b[0], b[1], b[2], b[3]) + dist(b[2], b[3], a[2], a[3]);  // oa ob db da
  const double bb = pickups + dist(a[0], a[1], b[2], b[3]) + dist(b[2], b[3], a[2], a[3]);  // ob oa db da
  const double aa = pickups + dist(a[0], a[1], a[2], a[3]) + dist(a[2], a[3], b[2], b[3]);  // ob oa da db
  return std::min({ab, ba, bb, aa});
}

}  // namespace

RouteLengths route_lengths(const std::vector<OdPoint>& centers, double min_length) {
  if (!(min_length > 0.0)) throw ValidationError("minimum trip length must be > 0");
  const std::size_t n = centers.size();
  RouteLengths out;
  out.solo.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.solo[i] = std::max(min_length, dist(centers[i][0], centers[i][1], centers[i][2], centers[i][3]));
  }
  out.pooled = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.pooled(i, i) = out.solo[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double l = std::max({pooled_route(centers[i], centers[j]), out.solo[i], out.solo[j]});
      out.pooled(i, j) = l;
      out.pooled(j, i) = l;
    }
  }
  return out;
}

CostStructure derive_costs(const std::vector<OdPoint>& centers, double cost_per_mile, double min_length) {
  if (!(cost_per_mile > 0.0) || !std::isfinite(cost_per_mile)) throw ValidationError("cost per mile must be > 0");
  const RouteLengths len = route_lengths(centers, min_length);
  CostStructure cs;
  cs.solo_cost.resize(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) cs.solo_cost[i] = cost_per_mile * len.solo[i];
  cs.pair_cost = Matrix(centers.size(), centers.size());
  for (std::size_t k = 0; k < cs.pair_cost.data().size(); ++k) {
    cs.pair_cost.data()[k] = cost_per_mile * len.pooled.data()[k];
  }
  return cs;
}

ThetaSpec ThetaSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ValidationError("bad theta spec '" + text + "'");
    return v;
  };
  ThetaSpec spec;
  if (kind == "equal") {
    spec = equal(number(rest));
  } else if (kind == "uniform") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw ValidationError("uniform theta spec needs LO,HI");
    spec = uniform(number(rest.substr(0, comma)), number(rest.substr(comma + 1)));
  } else {
    throw ValidationError("theta spec must be equal:V or uniform:LO,HI, got '" + text + "'");
  }
  if (!(spec.lo >= 0.0) || !(spec.hi >= spec.lo) || !std::isfinite(spec.hi)) {
    throw ValidationError("theta spec needs 0 <= LO <= HI");
  }
  return spec;
}

std::vector<double> assign_theta(std::size_t n, const ThetaSpec& spec, std::uint64_t seed) {
  if (!(spec.lo >= 0.0) || !(spec.hi >= spec.lo)) throw ValidationError("theta spec needs 0 <= LO <= HI");
  std::vector<double> theta(n, spec.lo);
  if (spec.kind == ThetaSpec::Kind::Uniform) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& t : theta) t = spec.lo + (spec.hi - spec.lo) * unit(rng);
  }
  return theta;
}

TypedInstanceBundle build_bundle(const std::vector<TripRecord>& trips, const BundleOptions& options) {
  if (!(options.hours > 0.0)) throw ValidationError("observation window must be > 0 hours");
  if (!(options.lambda_lower > 0.0)) throw ValidationError("lambda_lower must be > 0");
  const Clustering cl = cluster_trips(trips, options.n_types, options.seed);
  const std::size_t n = options.n_types;

  TypedInstanceBundle b;
  b.centers = cl.centers;
  b.counts.resize(n);
  for (std::size_t i = 0; i < n; ++i) b.counts[i] = static_cast<double>(cl.counts[i]) / options.hours;

  const RouteLengths len = route_lengths(b.centers, options.min_length);
  const CostStructure cs = derive_costs(b.centers, options.cost_per_mile, options.min_length);
  b.matching.theta = assign_theta(n, options.theta, options.seed + 1);
  b.matching.solo_cost = cs.solo_cost;
  b.matching.pair_cost = cs.pair_cost;
  b.matching.lambda_lower.assign(n, options.lambda_lower);
  b.matching.lambda_upper = b.counts;
  for (std::size_t i = 0; i < n; ++i) {
    if (b.counts[i] < options.lambda_lower) {
      throw ValidationError("cluster " + std::to_string(i) + " rate " + std::to_string(b.counts[i]) +
                            " per hour is below lambda_lower");
    }
  }
  b.matching.validate();
  b.demand = DemandModel::linear(len.solo, b.counts);
  return b;
}

TypedInstanceBundle synthetic_bundle(std::size_t n_types, double cost_per_mile, const ThetaSpec& theta,
                                     std::uint64_t seed, std::size_t trips_per_type) {
  SynthSpec spec;
  spec.trips = n_types * trips_per_type;
  spec.hotspots = n_types;
  spec.spread = 1.0;
  const std::vector<TripRecord> trips = synth_trips(spec, seed);
  BundleOptions opt;
  opt.n_types = n_types;
  opt.cost_per_mile = cost_per_mile;
  opt.theta = theta;
  opt.seed = seed;
  return build_bundle(trips, opt);
}

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw ValidationError(std::string("bundle is missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("bundle field '") + name + "' has the wrong type");
  }
}

Matrix matrix_from(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows[0].size();
  Matrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m) throw ValidationError("ragged matrix in bundle");
    for (std::size_t j = 0; j < m; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

}  // namespace

std::string bundle_to_json(const TypedInstanceBundle& b) {
  json j;
  j["theta"] = b.matching.theta;
  j["solo_cost"] = b.matching.solo_cost;
  j["pair_cost"] = matrix_json(b.matching.pair_cost);
  j["lambda_lower"] = b.matching.lambda_lower;
  j["lambda_upper"] = b.matching.lambda_upper;
  if (b.demand) {
    if (b.demand->kind() != DemandModel::Kind::Linear) throw ValidationError("only linear demand can be saved");
    j["demand"] = {{"kind", "linear"}, {"solo_length", b.demand->solo_length()}, {"max_rate", b.demand->max_rate()}};
  }
  if (!b.centers.empty()) j["centers"] = b.centers;
  if (!b.counts.empty()) j["counts"] = b.counts;
  return j.dump(2);
}

TypedInstanceBundle bundle_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ValidationError("bundle must be a JSON object");
  TypedInstanceBundle b;
  b.matching.theta = field<std::vector<double>>(j, "theta");
  b.matching.pair_cost = matrix_from(field<std::vector<std::vector<double>>>(j, "pair_cost"));
  if (j.contains("solo_cost")) {
    b.matching.solo_cost = field<std::vector<double>>(j, "solo_cost");
  } else {
    for (std::size_t i = 0; i < b.matching.pair_cost.rows() && i < b.matching.pair_cost.cols(); ++i) {
      b.matching.solo_cost.push_back(b.matching.pair_cost(i, i));
    }
  }
  b.matching.lambda_lower = field<std::vector<double>>(j, "lambda_lower");
  b.matching.lambda_upper = field<std::vector<double>>(j, "lambda_upper");
  b.matching.validate();

  if (j.contains("demand")) {
    const json& d = j.at("demand");
    if (!d.is_object() || field<std::string>(d, "kind") != "linear") {
      throw ValidationError("bundle demand must be {\"kind\": \"linear\", ...}");
    }
    b.demand = DemandModel::linear(field<std::vector<double>>(d, "solo_length"), field<std::vector<double>>(d, "max_rate"));
    if (b.demand->size() != b.matching.size()) throw ValidationError("bundle demand size differs from the instance");
  }
  if (j.contains("centers")) b.centers = field<std::vector<OdPoint>>(j, "centers");
  if (j.contains("counts")) b.counts = field<std::vector<double>>(j, "counts");
  return b;
}

void save_bundle(const std::string& path, const TypedInstanceBundle& bundle) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write bundle " + path);
  out << bundle_to_json(bundle) << '\n';
}

TypedInstanceBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open bundle " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return bundle_from_json(ss.str());
}

}  // namespace fluidmatch
