#include "tables.hpp"

#include <algorithm>
#include <sstream>

#include "fluidmatch/serialization.hpp"

namespace cli {

using namespace fluidmatch;

std::string TextTable::str() const {
  std::vector<std::size_t> width;
  for (const auto& r : rows_) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
  }
  std::ostringstream os;
  for (const auto& r : rows_) {
    std::string line;
    for (std::size_t k = 0; k < r.size(); ++k) {
      line += r[k];
      if (k + 1 < r.size()) line += std::string(width[k] - r[k].size() + 2, ' ');
    }
    os << line << '\n';
  }
  return os.str();
}

std::string num(double v) { return format_number(v); }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

std::string table(const FluidSolution& s) {
  const std::size_t n = s.y.size();
  std::ostringstream os;
  os << "objective  " << num(s.objective) << "\nbasis      " << s.basis_tag << "\n\n";
  std::vector<std::string> head{"type", "y", "gamma"};
  for (std::size_t j = 0; j < n; ++j) head.push_back("x[.," + std::to_string(j) + "]");
  TextTable t(head);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row{std::to_string(i), num(s.y[i]), s.gamma.empty() ? "-" : num(s.gamma[i])};
    for (std::size_t j = 0; j < n; ++j) row.push_back(num(s.x(i, j)));
    t.add(row);
  }
  os << t.str();
  return os.str();
}

std::string table(const TwoTypeSolution& s) {
  std::ostringstream os;
  os << "case       " << to_string(s.case_id) << "\n"
     << "delta1     " << num(s.indicators.delta1) << "\n"
     << "delta2     " << num(s.indicators.delta2) << "\n"
     << "delta3     " << num(s.indicators.delta3) << "\n"
     << "relabeled  " << (s.relabeled ? "yes" : "no") << "\n\n"
     << table(s.solution);
  return os.str();
}

std::string table(const ConcavityCertificate& c) {
  std::ostringstream os;
  os << "verdict    " << to_string(c.verdict);
  if (c.rule) os << " (" << to_string(*c.rule) << ")";
  os << "\n";
  if (c.tau1) os << "tau1       " << num(*c.tau1) << "\n";
  if (c.tau2) os << "tau2       " << num(*c.tau2) << "\n";
  os << "e_(k)      " << join(c.critical_eff) << "\n";
  if (!c.required_lower_bounds.empty()) os << "bounds     " << join(c.required_lower_bounds) << "\n";
  if (c.witness) os << "witness    " << join(c.witness->lambda) << "  " << c.witness->detail << "\n";
  os << "\n";
  TextTable t({"rule", "applicable", "satisfied", "detail"});
  for (const auto& r : c.checks) {
    t.add({std::string(to_string(r.rule)), r.applicable ? "yes" : "no", r.satisfied ? "yes" : "no", r.detail});
  }
  os << t.str();
  return os.str();
}

std::string table(const HessianEstimate& h) {
  std::ostringstream os;
  os << "smooth       " << (h.smooth ? "yes" : "no") << "\n"
     << "eigenvalues  " << join(h.eigenvalues) << "\n\n";
  const std::size_t n = h.hessian.rows();
  std::vector<std::string> head{""};
  for (std::size_t j = 0; j < n; ++j) head.push_back(std::to_string(j));
  TextTable t(head);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (std::size_t j = 0; j < n; ++j) row.push_back(num(h.hessian(i, j)));
    t.add(row);
  }
  os << t.str();
  return os.str();
}

std::string table(const OneSidedPartials& p) {
  std::ostringstream os;
  os << "left       " << num(p.left) << "\nright      " << num(p.right) << "\nstep       " << num(p.step)
     << "\nviolation  " << (p.violation ? "yes" : "no") << "\n";
  return os.str();
}

std::string table(const MidpointReport& r) {
  std::ostringstream os;
  os << "rho         " << num(r.rho) << "\nseed        " << r.seed << "\nsamples     " << r.samples
     << "\nviolations  " << r.violations << "\nworst       " << num(r.worst_violation) << "\n";
  if (r.witness) os << "witness     " << join(r.witness->a) << " | " << join(r.witness->b) << "\n";
  return os.str();
}

std::string table(const RhoSearchResult& r) {
  std::ostringstream os;
  os << "found       " << (r.found ? "yes" : "no") << "\nladder      " << join(r.ladder) << "\n" << table(r.report);
  return os.str();
}

std::string table(const PricingResult& r) {
  std::ostringstream os;
  os << "solver      " << to_string(r.solver) << "\n"
     << "objective   " << num(r.objective) << "\n"
     << "lambda*     " << join(r.lambda_star) << "\n"
     << "iterations  " << r.iterations << "\n"
     << "lp solves   " << r.lp_solves << "\n"
     << "rho         " << num(r.rho_final) << " (max " << num(r.rho_max) << ")\n";
  if (r.solver == PricingSolver::PG) {
    os << "step        " << num(r.stepsize_initial) << " -> " << num(r.stepsize_final) << "\n";
  }
  os << "wall time   " << num(r.wall_time) << " s\n"
     << "converged   " << (r.converged ? "yes" : "no") << (r.time_capped ? " (time cap)" : "") << "\n";
  return os.str();
}

std::string table(const BenchmarkTable& b) {
  TextTable t({"instance", "solver", "step0", "seed", "time_s", "iters", "objective", "note"});
  for (const auto& c : b.cells) {
    t.add({c.instance_id, std::string(to_string(c.config.solver)),
           c.config.solver == PricingSolver::PG ? num(c.config.step0) : "-", std::to_string(c.seed), num(c.time_s),
           std::to_string(c.iters), num(c.objective),
           !c.error.empty() ? c.error : (c.time_capped ? "time cap" : "")});
  }
  TextTable a({"instance", "solver", "step0", "runs", "mean_time_s", "mean_iters", "mean_objective"});
  for (const auto& g : b.aggregates) {
    a.add({g.instance_id, std::string(to_string(g.config.solver)),
           g.config.solver == PricingSolver::PG ? num(g.config.step0) : "-", std::to_string(g.runs),
           num(g.mean_time_s), num(g.mean_iters), num(g.mean_objective)});
  }
  return t.str() + "\n" + a.str();
}

}  // namespace cli
