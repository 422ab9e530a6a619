#include "fluidmatch/serialization.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

namespace {

using nlohmann::json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json mat(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (double x : m.row(i)) r.push_back(num(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

json solution_json(const FluidSolution& s) {
  return {{"x", mat(s.x)},         {"y", vec(s.y)},     {"objective", num(s.objective)},
          {"gamma", vec(s.gamma)}, {"eta", mat(s.eta)}, {"basis_tag", s.basis_tag}};
}

json midpoint_json(const MidpointReport& r) {
  json j{{"seed", r.seed},
         {"rho", num(r.rho)},
         {"tolerance", num(r.tolerance)},
         {"samples", r.samples},
         {"passes", r.passes},
         {"violations", r.violations},
         {"worst_violation", num(r.worst_violation)}};
  if (r.witness) {
    j["witness"] = {{"a", vec(r.witness->a)},
                    {"b", vec(r.witness->b)},
                    {"cost_a", num(r.witness->cost_a)},
                    {"cost_b", num(r.witness->cost_b)},
                    {"cost_mid", num(r.witness->cost_mid)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

std::string solver_label(const SolverConfig& c) { return std::string(to_string(c.solver)); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_json(const FluidSolution& s) { return solution_json(s).dump(2); }

std::string to_json(const TwoTypeSolution& s) {
  json j{{"case", std::string(to_string(s.case_id))},
         {"delta1", num(s.indicators.delta1)},
         {"delta2", num(s.indicators.delta2)},
         {"delta3", num(s.indicators.delta3)},
         {"relabeled", s.relabeled},
         {"solution", solution_json(s.solution)}};
  return j.dump(2);
}

std::string to_json(const EqualPatienceSolution& s) {
  json j{{"case", std::string(to_string(s.case_id))},
         {"delta1", num(s.delta1)},
         {"decoupled_cost", num(s.decoupled_cost)},
         {"pooled_cost", num(s.pooled_cost)},
         {"solution", solution_json(s.solution)}};
  return j.dump(2);
}

std::string to_json(const ConcavityCertificate& c) {
  json j;
  j["verdict"] = std::string(to_string(c.verdict));
  j["rule"] = c.rule ? json(std::string(to_string(*c.rule))) : json(nullptr);
  j["tau1"] = c.tau1 ? num(*c.tau1) : json(nullptr);
  j["tau2"] = c.tau2 ? num(*c.tau2) : json(nullptr);
  j["relabeled"] = c.relabeled;
  j["critical_eff"] = vec(c.critical_eff);
  j["required_lower_bounds"] = vec(c.required_lower_bounds);
  if (c.witness) {
    j["witness"] = {{"lambda", vec(c.witness->lambda)}, {"y", vec(c.witness->y)}, {"detail", c.witness->detail}};
  } else {
    j["witness"] = nullptr;
  }
  json checks = json::array();
  for (const auto& chk : c.checks) {
    checks.push_back({{"rule", std::string(to_string(chk.rule))},
                      {"applicable", chk.applicable},
                      {"satisfied", chk.satisfied},
                      {"required_lower_bounds", vec(chk.required_lower_bounds)},
                      {"detail", chk.detail}});
  }
  j["checks"] = checks;
  return j.dump(2);
}

std::string to_json(const HessianEstimate& h) {
  json j{{"hessian", mat(h.hessian)},
         {"smooth", h.smooth},
         {"steps", vec(h.steps)},
         {"eigenvalues", vec(h.eigenvalues)},
         {"max_eigenvalue", h.eigenvalues.empty() ? json(nullptr) : num(h.eigenvalues.back())}};
  return j.dump(2);
}

std::string to_json(const OneSidedPartials& p) {
  json j{{"left", num(p.left)}, {"right", num(p.right)}, {"step", num(p.step)}, {"violation", p.violation}};
  return j.dump(2);
}

std::string to_json(const MidpointReport& r) { return midpoint_json(r).dump(2); }

std::string to_json(const RhoSearchResult& r) {
  json j{{"found", r.found}, {"rho", num(r.rho)}, {"ladder", vec(r.ladder)}, {"report", midpoint_json(r.report)}};
  return j.dump(2);
}

std::string to_json(const PricingResult& r) {
  json j{{"solver", std::string(to_string(r.solver))},
         {"lambda_star", vec(r.lambda_star)},
         {"objective", num(r.objective)},
         {"trajectory", vec(r.trajectory)},
         {"iterations", r.iterations},
         {"lp_solves", r.lp_solves},
         {"rho_final", num(r.rho_final)},
         {"rho_max", num(r.rho_max)},
         {"wall_time", num(r.wall_time)},
         {"converged", r.converged},
         {"time_capped", r.time_capped}};
  if (r.solver == PricingSolver::PG) {
    j["stepsize_initial"] = num(r.stepsize_initial);
    j["stepsize_final"] = num(r.stepsize_final);
  }
  return j.dump(2);
}

std::string to_json(const BenchmarkTable& t) {
  json cells = json::array();
  for (const auto& c : t.cells) {
    cells.push_back({{"instance_id", c.instance_id},
                     {"solver", solver_label(c.config)},
                     {"step0", num(c.config.step0)},
                     {"seed", c.seed},
                     {"time_s", num(c.time_s)},
                     {"iters", c.iters},
                     {"objective", num(c.objective)},
                     {"converged", c.converged},
                     {"time_capped", c.time_capped},
                     {"error", c.error.empty() ? json(nullptr) : json(c.error)}});
  }
  json aggs = json::array();
  for (const auto& a : t.aggregates) {
    aggs.push_back({{"instance_id", a.instance_id},
                    {"solver", solver_label(a.config)},
                    {"step0", num(a.config.step0)},
                    {"runs", a.runs},
                    {"mean_time_s", num(a.mean_time_s)},
                    {"mean_iters", num(a.mean_iters)},
                    {"mean_objective", num(a.mean_objective)}});
  }
  return json{{"cells", cells}, {"aggregates", aggs}}.dump(2);
}

std::string to_csv(const FluidSolution& s) {
  std::ostringstream os;
  os << "field,i,j,value\n";
  os << "objective,,," << format_number(s.objective) << '\n';
  for (std::size_t i = 0; i < s.y.size(); ++i) os << "y," << i << ",," << format_number(s.y[i]) << '\n';
  for (std::size_t i = 0; i < s.gamma.size(); ++i) os << "gamma," << i << ",," << format_number(s.gamma[i]) << '\n';
  for (std::size_t i = 0; i < s.x.rows(); ++i) {
    for (std::size_t j = 0; j < s.x.cols(); ++j) os << "x," << i << ',' << j << ',' << format_number(s.x(i, j)) << '\n';
  }
  for (std::size_t i = 0; i < s.eta.rows(); ++i) {
    for (std::size_t j = 0; j < s.eta.cols(); ++j) {
      os << "eta," << i << ',' << j << ',' << format_number(s.eta(i, j)) << '\n';
    }
  }
  os << "basis_tag,,," << s.basis_tag << '\n';
  return os.str();
}

std::string to_csv(const PricingResult& r) {
  std::ostringstream os;
  os << "iteration,objective\n";
  for (std::size_t k = 0; k < r.trajectory.size(); ++k) os << k << ',' << format_number(r.trajectory[k]) << '\n';
  return os.str();
}

std::string to_csv(const BenchmarkTable& t) {
  std::ostringstream os;
  os << "instance_id,solver,step0,seed,time_s,iters,objective\n";
  for (const auto& c : t.cells) {
    os << c.instance_id << ',' << solver_label(c.config) << ',' << format_number(c.config.step0) << ',' << c.seed
       << ',' << format_number(c.time_s) << ',' << c.iters << ',' << format_number(c.objective) << '\n';
  }
  return os.str();
}

FluidSolution fluid_solution_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    FluidSolution s;
    auto rows = [](const json& a) {
      const std::size_t n = a.size();
      const std::size_t m = n == 0 ? 0 : a[0].size();
      Matrix out(n, m);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) out(i, k) = a.at(i).at(k).get<double>();
      }
      return out;
    };
    s.x = rows(j.at("x"));
    s.eta = rows(j.at("eta"));
    s.y = j.at("y").get<std::vector<double>>();
    s.gamma = j.at("gamma").get<std::vector<double>>();
    s.objective = j.at("objective").get<double>();
    s.basis_tag = j.at("basis_tag").get<std::string>();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid solution JSON: ") + e.what(), 0);
  }
}

}  // namespace fluidmatch
