#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/serialization.hpp"
#include "generators.hpp"

using namespace fluidmatch;

TEST(Numbers, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3, 2.0 / 3, 1e-300, 123456789.125, -4.5}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(NAN), "nan");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(FluidSolutionIo, JsonRoundTrip) {
  testgen::Rng rng(61);
  const auto inst = testgen::random_instance(rng, 3);
  const auto l = testgen::random_rates(rng, inst);
  const FluidSolution s = solve_fluid_lp(inst, l);
  const FluidSolution r = fluid_solution_from_json(to_json(s));
  EXPECT_EQ(r.objective, s.objective);
  EXPECT_EQ(r.y, s.y);
  EXPECT_EQ(r.gamma, s.gamma);
  EXPECT_EQ(r.x, s.x);
  EXPECT_EQ(r.eta, s.eta);
  EXPECT_EQ(r.basis_tag, s.basis_tag);
}

TEST(FluidSolutionIo, JsonFieldsAndRowMajorX) {
  const auto inst = make_two_type_instance(1.0, 2.0, 1.0, 1.0, 1.01);
  const std::vector<double> l{0.4, 0.9};
  const FluidSolution s = solve_fluid_lp(inst, l);
  const auto j = nlohmann::json::parse(to_json(s));
  for (const char* key : {"x", "y", "objective", "gamma", "eta", "basis_tag"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["x"][0][1].get<double>(), s.x(0, 1));
  EXPECT_EQ(j["x"][1][0].get<double>(), s.x(1, 0));
}

TEST(FluidSolutionIo, CsvCarriesSameNumbersAsJson) {
  testgen::Rng rng(62);
  const auto inst = testgen::random_instance(rng, 3);
  const auto l = testgen::random_rates(rng, inst);
  const FluidSolution s = solve_fluid_lp(inst, l);
  const auto j = nlohmann::json::parse(to_json(s));
  std::istringstream csv(to_csv(s));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "field,i,j,value");
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() == 3) f.push_back("");
    ASSERT_EQ(f.size(), 4u) << line;
    if (f[0] == "basis_tag") {
      EXPECT_EQ(f[3], j["basis_tag"].get<std::string>());
      continue;
    }
    const double v = std::stod(f[3]);
    if (f[0] == "objective") EXPECT_EQ(v, j["objective"].get<double>());
    else if (f[1].empty()) ADD_FAILURE() << line;
    else if (f[2].empty()) EXPECT_EQ(v, j[f[0]][std::stoul(f[1])].get<double>());
    else EXPECT_EQ(v, j[f[0]][std::stoul(f[1])][std::stoul(f[2])].get<double>());
    ++rows;
  }
  EXPECT_EQ(rows, 1 + 3 + 3 + 9 + 9);
}

TEST(BenchmarkIo, CsvHeaderAndNanForFailures) {
  BenchmarkTable t;
  BenchmarkCell ok;
  ok.instance_id = "a";
  ok.objective = 1.5;
  ok.iters = 3;
  BenchmarkCell bad = ok;
  bad.config = SolverConfig::pg(10);
  bad.objective = NAN;
  bad.error = "boom";
  t.cells = {ok, bad};
  std::istringstream in(to_csv(t));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "instance_id,solver,step0,seed,time_s,iters,objective");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 5), "a,MM,");
  std::getline(in, line);
  EXPECT_NE(line.find("nan"), std::string::npos);
  const auto j = nlohmann::json::parse(to_json(t));
  EXPECT_TRUE(j["cells"][1]["objective"].is_null());
}
