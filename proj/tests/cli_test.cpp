// Copyright 2026 The cvhbt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace cvhbt;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cvhbt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string metadata(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  const std::string prefix = "# " + key + "=";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cvhbt_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ClassifyJson) {
  auto r = run_cli({"classify", "--nbar", "1", "--mc", "0"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], cli::kSchemaVersion);
  EXPECT_EQ(j["class"], "Separable");
  EXPECT_NEAR(j["visibility"].get<double>(), 1.0 / 3.0, 1e-15);

  r = run_cli({"classify", "--nbar", "1", "--mc2", "2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  j = json::parse(r.out);
  EXPECT_EQ(j["class"], "EntangledPure");
  EXPECT_NEAR(j["visibility"].get<double>(), 0.6, 1e-12);
  EXPECT_NEAR(j["witness_mean"].get<double>(), -0.1, 1e-12);
}

TEST(Cli, ClassifyUnphysicalExitsThree) {
  const auto r = run_cli({"classify", "--nbar", "0.1", "--mc", "0.5"});
  EXPECT_EQ(r.code, cli::kUnphysical);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["class"], "Unphysical");
  EXPECT_TRUE(j["visibility"].is_null());
}

TEST(Cli, WitnessJson) {
  const auto r = run_cli({"witness", "--nbar", "1", "--mc", "1.2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "EntanglementWitnessed");
  EXPECT_LT(j["value"].get<double>(), 0.0);
  EXPECT_EQ(run_cli({"witness", "--nbar", "0", "--mc", "0"}).code, cli::kUnphysical);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, cli::kInvalidFlags);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kInvalidFlags);
  EXPECT_EQ(run_cli({"classify", "--mc", "1"}).code, cli::kInvalidFlags);
  EXPECT_EQ(run_cli({"classify", "--nbar", "1", "--mc", "1", "--mc2", "1"}).code,
            cli::kInvalidFlags);
  EXPECT_EQ(run_cli({"classify", "--nbar", "-1", "--mc", "0"}).code, cli::kInvalidFlags);
  EXPECT_EQ(run_cli({"classify", "--nbar", "1", "--mc", "0", "--format", "xml"}).code,
            cli::kInvalidFlags);
  EXPECT_EQ(run_cli({"visibility-scan", "--nbar", "1", "--steps", "1"}).code,
            cli::kInvalidFlags);
  EXPECT_EQ(run_cli({"hom-dip", "--nbar", "1"}).code, cli::kInvalidFlags);
  EXPECT_EQ(
      run_cli({"hom-dip", "--nbar", "1", "--mc", "1", "--t-min", "2", "--t-max", "1"}).code,
      cli::kInvalidFlags);
  EXPECT_EQ(run_cli({"simulate", "--nbar", "1", "--mc", "1", "--phases", "2"}).code,
            cli::kInvalidFlags);
}

TEST(Cli, OracleToleranceFailureExitsFour) {
  const auto r = run_cli({"oracle-check", "--nbar", "0.5", "--mc", "0.6", "--tol", "1e-30"});
  EXPECT_EQ(r.code, cli::kOracleFailure);
  EXPECT_FALSE(json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, OracleCheckPasses) {
  const auto r = run_cli({"oracle-check", "--nbar", "1", "--mc", "1.3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LE(j["max_rel_error"].get<double>(), 1e-5);
}

TEST(Cli, FitFailureExitsFive) {
  const auto r =
      run_cli({"simulate", "--nbar", "1", "--mc", "1", "--mean-counts", "1e-9"});
  EXPECT_EQ(r.code, cli::kFitFailure);
}

TEST(Cli, VisibilityScanCrossing) {
  for (const std::string nbar : {"1", "0.1"}) {
    const auto r = run_cli({"visibility-scan", "--nbar", nbar});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const double crossing = std::stod(metadata(r.out, "refined_crossing_mc"));
    EXPECT_NEAR(crossing, std::stod(nbar), 1e-6);
    EXPECT_EQ(metadata(r.out, "schema_version"), "1");
    EXPECT_NE(r.out.find("\nmc,visibility\n"), std::string::npos);
  }
}

TEST(Cli, VisibilityScanJson) {
  const auto r = run_cli({"visibility-scan", "--nbar", "1", "--steps", "5", "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["visibility"].size(), 5u);
  EXPECT_NEAR(j["visibility"][0].get<double>(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(j["visibility"][4].get<double>(), 0.6, 1e-12);
}

TEST(Cli, HomDipMinimum) {
  const auto r = run_cli({"hom-dip", "--nbar", "0.1", "--mc2", "0.11"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NEAR(std::stod(metadata(r.out, "p.p_min")), 1.0 / 7.0, 1e-12);
  EXPECT_NEAR(std::stod(metadata(r.out, "p.p_min")), 0.1429, 1e-4);

  const auto multi = run_cli({"hom-dip", "--nbar", "1", "--mc", "0", "--mc", "1", "--mc",
                              "1.41421356237", "--steps", "11"});
  ASSERT_EQ(multi.code, cli::kOk) << multi.err;
  EXPECT_NE(multi.out.find("\nT,p1,p2,p3\n"), std::string::npos);
  EXPECT_NEAR(std::stod(metadata(multi.out, "p2.p_min")), 0.5, 1e-15);
}

TEST(Cli, FigureOutputsAreReproducible) {
  const std::vector<std::vector<std::string>> figures{
      {"visibility-scan", "--nbar", "1"},
      {"visibility-scan", "--nbar", "0.1"},
      {"hom-dip", "--nbar", "1", "--mc", "0", "--mc", "1", "--mc", "1.4142135623730951"},
      {"hom-dip", "--nbar", "0.1", "--mc2", "0.11"},
  };
  for (const auto& args : figures) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, SimulateStdoutCarriesRecordsAndEstimate) {
  const auto r = run_cli({"simulate", "--nbar", "1", "--mc", "1.41421356237", "--seed", "7"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto split = r.out.find("\n\n");
  ASSERT_NE(split, std::string::npos);
  EXPECT_EQ(r.out.rfind("setting,expected_rate,counts\n", 0), 0u);
  const auto j = json::parse(r.out.substr(split + 2));
  EXPECT_EQ(j["estimate"]["verdict"], "Witnessed");
  EXPECT_EQ(j["estimate"]["seed"], 7);
  EXPECT_NEAR(j["estimate"]["v_hat"].get<double>(), 0.6, 0.02);
  EXPECT_EQ(r.out, run_cli({"simulate", "--nbar", "1", "--mc", "1.41421356237", "--seed", "7"}).out);
}

TEST(Cli, SimulateWritesSidecarJson) {
  const auto dir = scratch_dir("sim");
  const auto csv = dir / "run.csv";
  const auto r = run_cli({"simulate", "--nbar", "1", "--mc", "1", "--out", csv.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(slurp(csv).rfind("setting,expected_rate,counts\n", 0), 0u);
  const auto j = json::parse(slurp(dir / "run.json"));
  EXPECT_EQ(j["command"], "simulate");
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = scratch_dir("env");
  ::setenv(cli::kOutputDirEnv, dir.c_str(), 1);
  const auto r = run_cli({"visibility-scan", "--nbar", "1", "--steps", "3"});
  ::unsetenv(cli::kOutputDirEnv);
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(slurp(dir / "visibility-scan.csv").find("mc,visibility"), std::string::npos);
  std::filesystem::remove_all(dir);
}
