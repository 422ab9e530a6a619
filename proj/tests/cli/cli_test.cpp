#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(FLUIDMATCH_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("fluidmatch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::filesystem::path dir_;
};

const char* kSingleType = R"({"theta":[1],"pair_cost":[[1]],"lambda_lower":[0.001],"lambda_upper":[10]})";
const char* kQuadratic =
    R"({"theta":[0],"pair_cost":[[1]],"lambda_lower":[0.001],"lambda_upper":[1],)"
    R"("demand":{"kind":"linear","solo_length":[1],"max_rate":[1]}})";
const char* kThreeEqual =
    R"({"theta":[0.5,0.5,0.5],"pair_cost":[[1,1.3,1.6],[1.3,1.2,1.5],[1.6,1.5,0.9]],)"
    R"("lambda_lower":[0.01,0.01,0.01],"lambda_upper":[5,5,5]})";

}  // namespace

TEST_F(CliTest, SolveSingleTypeBundle) {
  const CliResult r = run("solve --bundle " + write("n1.json", kSingleType) + " --lambda 1 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["objective"].get<double>(), 2.0 / 3, 1e-12);
}

TEST_F(CliTest, MissingFileExitsWithInputError) {
  const CliResult r = run("solve --bundle " + (dir_ / "nope.json").string());
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, RateOutsideBoxExitsWithInputError) {
  EXPECT_EQ(run("solve --bundle " + write("n1.json", kSingleType) + " --lambda 50").code, 2);
}

TEST_F(CliTest, UnknownFlagRejected) {
  EXPECT_EQ(run("solve --bundle " + write("n1.json", kSingleType) + " --frobnicate 3").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(CliTest, CsvAndJsonCarryIdenticalNumbers) {
  const std::string b = write("n1.json", kSingleType);
  const CliResult js = run("solve --bundle " + b + " --lambda 1.7 --format json");
  const CliResult cs = run("solve --bundle " + b + " --lambda 1.7 --format csv");
  ASSERT_EQ(js.code, 0);
  ASSERT_EQ(cs.code, 0);
  const auto j = nlohmann::json::parse(js.out);
  std::istringstream in(cs.out);
  std::string line;
  std::getline(in, line);
  int checked = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) f.push_back(c);
    if (f[0] == "objective") {
      EXPECT_EQ(std::stod(f[3]), j["objective"].get<double>());
      ++checked;
    }
    if (f[0] == "y") {
      EXPECT_EQ(std::stod(f[3]), j["y"][0].get<double>());
      ++checked;
    }
    if (f[0] == "x") {
      EXPECT_EQ(std::stod(f[3]), j["x"][0][0].get<double>());
      ++checked;
    }
    if (f[0] == "gamma") {
      EXPECT_EQ(std::stod(f[3]), j["gamma"][0].get<double>());
      ++checked;
    }
  }
  EXPECT_EQ(checked, 4);
}

TEST_F(CliTest, OutDirectoryReceivesArtifact) {
  const auto out = dir_ / "artifacts";
  ASSERT_EQ(run("solve --bundle " + write("n1.json", kSingleType) + " --format json --out " + out.string()).code, 0);
  EXPECT_TRUE(std::filesystem::exists(out / "solution.json"));
}

TEST_F(CliTest, CertifyThreeEquallyPatientTypes) {
  const CliResult r = run("certify --bundle " + write("n3.json", kThreeEqual));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("WeaklyConcaveCertified (ThreeTypeEqualPatience)"), std::string::npos) << r.out;
}

TEST_F(CliTest, PriceQuadraticWithMm) {
  const CliResult r = run("price --bundle " + write("q.json", kQuadratic) + " --lambda0 0.9 --eps 1e-9 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["lambda_star"][0].get<double>(), 0.25, 1e-6);
}

TEST_F(CliTest, PriceWithoutDemandIsInputError) {
  EXPECT_EQ(run("price --bundle " + write("n1.json", kSingleType)).code, 2);
}

TEST_F(CliTest, BenchmarkCsvHeader) {
  const CliResult r = run("benchmark --sizes 3 --c-per-mile 0.9 --seeds 0 --steps 10 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "instance_id,solver,step0,seed,time_s,iters,objective");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST_F(CliTest, SynthThenIngestProducesBundle) {
  const std::string trips = (dir_ / "trips.csv").string(), bundle = (dir_ / "b.json").string();
  ASSERT_EQ(run("synth --trips 300 --hotspots 3 --seed 2 --trips-out " + trips).code, 0);
  ASSERT_EQ(run("ingest --trips " + trips + " --n-types 3 --bundle-out " + bundle + " --format json").code, 0);
  std::ifstream in(bundle);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["theta"].size(), 3u);
}

TEST_F(CliTest, SynthIsDeterministic) {
  EXPECT_EQ(run("synth --trips 100 --seed 5").out, run("synth --trips 100 --seed 5").out);
}

TEST_F(CliTest, MalformedTripsReportLine) {
  const std::string bad = write("bad.csv", "origin_x,origin_y,dest_x,dest_y\n1,2,3,4\n1,x,3,4\n");
  EXPECT_EQ(run("ingest --trips " + bad + " --n-types 1").code, 2);
}

TEST_F(CliTest, ExamplesPass) {
  for (int id = 1; id <= 4; ++id) {
    const CliResult r = run("examples " + std::to_string(id));
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  }
  const CliResult three = run("examples 3");
  EXPECT_NE(three.out.find("tau1"), std::string::npos);
  const CliResult five = run("examples 5 --format json");
  ASSERT_EQ(five.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(five.out)["pass"].get<bool>());
  EXPECT_EQ(run("examples 6").code, 2);
}

TEST_F(CliTest, DiagnosePartials) {
  const CliResult r = run("diagnose partials --bundle " + write("n1.json", kSingleType) + " --lambda 2 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["violation"].get<bool>());
}
