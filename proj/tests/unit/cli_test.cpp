/* Copyright 2026 The spatialcv Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/scenario.hpp"

namespace spatialcv::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path scratch(const std::string& name) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path dir = fs::temp_directory_path() / "spatialcv_cli_test" /
                 (std::string(info->test_suite_name()) + "." + info->name()) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

std::string field_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.field();
  }
  return "<accepted>";
}

struct RunResult {
  int code;
  json report;
  fs::path dir;
};

RunResult run_text(const std::string& text, const std::string& name = "run") {
  const auto dir = scratch(name);
  const auto path = dir / "scenario.json";
  std::ofstream(path) << text;
  std::ostringstream log;
  RunOptions o;
  o.scenario_path = path.string();
  o.out_dir = (dir / "out").string();
  const int code = run_command(o, log);
  return {code, read_json(dir / "out" / "report.json"), dir / "out"};
}

RunResult run_file(const std::string& scenario, const std::string& name = "run") {
  const auto dir = scratch(name);
  std::ostringstream log;
  RunOptions o;
  o.scenario_path = std::string(SPATIALCV_SCENARIO_DIR) + "/" + scenario;
  o.out_dir = dir.string();
  const int code = run_command(o, log);
  return {code, read_json(dir / "report.json"), dir};
}

constexpr const char* kMinimal = R"({"version": 1, "grid": {"n": 64},
  "state": {"kind": "gaussian", "width": 1.0}, "program": [{"gate": "fourier"}]})";

TEST(ScenarioParseTest, MinimalScenarioUsesDefaults) {
  const auto s = parse_scenario(kMinimal);
  EXPECT_EQ(s.grid.n, 64u);
  EXPECT_FALSE(s.grid.half_extent.has_value());
  EXPECT_EQ(s.program.size(), 1u);
}

TEST(ScenarioParseTest, ErrorsNameTheField) {
  EXPECT_EQ(field_of("{"), "<document>");
  EXPECT_EQ(field_of(R"({"version": 2})"), "version");
  EXPECT_EQ(field_of(R"({"version": 1, "grid": {"n": 63},
      "state": {"kind": "gaussian"}})"),
            "grid.n");
  EXPECT_EQ(field_of(R"({"version": 1, "grid": {"n": 64, "spacing": 0.1},
      "state": {"kind": "gaussian"}})"),
            "grid.spacing");
  EXPECT_EQ(field_of(R"({"version": 1, "grid": {"n": 64},
      "state": {"kind": "gaussian"},
      "program": [{"gate": "fourier"}, {"gate": "frft", "theta": "wide"}]})"),
            "program[1].theta");
  EXPECT_EQ(field_of(R"({"version": 1, "grid": {"n": 64},
      "state": {"kind": "gaussian"}, "scale": {"k": 1.0, "wavelength": 1e-6}})"),
            "scale");
}

TEST(ScenarioParseTest, UnknownTopLevelFieldIsRejected) {
  EXPECT_EQ(field_of(R"({"version": 1, "grid": {"n": 64},
      "state": {"kind": "gaussian"}, "colour": "blue"})"),
            "colour");
}

TEST(RunTest, UnknownGateNamesItsIndex) {
  const auto r = run_file("bad_gate.json");
  EXPECT_EQ(r.code, kExitError);
  EXPECT_EQ(r.report["status"], "error");
  EXPECT_EQ(r.report["error"]["field"], "program[2].gate");
}

TEST(RunTest, SamplingWithoutSeedIsAnError) {
  const auto r = run_text(R"({"version": 1, "grid": {"n": 128},
      "state": {"kind": "gaussian", "width": 1.0},
      "measurements": [{"kind": "position", "sample": true}]})");
  EXPECT_EQ(r.code, kExitError);
  EXPECT_EQ(r.report["error"]["field"], "measurements[0].seed");
}

TEST(RunTest, FourierCycleReturnsTheInput) {
  const auto r = run_file("fourier_cycle.json");
  ASSERT_EQ(r.code, kExitOk) << r.report.dump(2);
  const auto& checks = r.report["checks"];
  bool found = false;
  for (const auto& c : checks) {
    if (c["name"] == "cycle") {
      found = true;
      EXPECT_GE(c["value"].get<double>(), 1.0 - 1e-9);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(fs::exists(r.dir / "final_state.csv"));
  EXPECT_EQ(slurp(r.dir / "final_state.csv").substr(0, 26), "coordinate,real,imag,abs2\n");
}

TEST(RunTest, LinearClusterNullifiersDecrease) {
  const auto r = run_file("linear_cluster_nullifiers.json");
  ASSERT_EQ(r.code, kExitOk) << r.report.dump(2);
  int decreasing = 0;
  for (const auto& c : r.report["checks"]) {
    if (c["name"].get<std::string>().starts_with("nullifiers.decreasing.")) {
      ++decreasing;
      EXPECT_TRUE(c["passed"].get<bool>());
    }
  }
  EXPECT_EQ(decreasing, 4);
}

TEST(RunTest, FailingCheckExitsTwo) {
  const auto r = run_text(R"({"version": 1, "grid": {"n": 128},
      "state": {"kind": "gaussian", "width": 1.0},
      "program": [{"gate": "fourier"}],
      "outputs": [{"kind": "fidelity_vs", "reference": "initial", "min": 0.999,
                   "name": "same"},
                  {"kind": "fidelity_vs", "name": "shifted", "min": 0.999,
                   "reference": {"kind": "gaussian", "center_x": 3.0, "width": 1.0}}]})");
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_EQ(r.report["status"], "check_failed");
}

TEST(RunTest, ReportsAreByteIdenticalAcrossRuns) {
  const auto a = run_file("epr_sampled.json", "a");
  const auto b = run_file("epr_sampled.json", "b");
  ASSERT_EQ(a.code, kExitOk) << a.report.dump(2);
  EXPECT_EQ(slurp(a.dir / "report.json"), slurp(b.dir / "report.json"));
  for (const auto& f : a.report["files"]) {
    const auto name = f.get<std::string>();
    EXPECT_EQ(slurp(a.dir / name), slurp(b.dir / name)) << name;
  }
}

TEST(RunTest, SeedOverrideChangesTheSample) {
  const auto dir = scratch("seeded");
  std::ostringstream log;
  RunOptions o;
  o.scenario_path = std::string(SPATIALCV_SCENARIO_DIR) + "/epr_sampled.json";
  o.out_dir = (dir / "a").string();
  ASSERT_EQ(run_command(o, log), kExitOk);
  o.seed = 99;
  o.out_dir = (dir / "b").string();
  ASSERT_EQ(run_command(o, log), kExitOk);
  const auto a = read_json(dir / "a" / "report.json");
  const auto b = read_json(dir / "b" / "report.json");
  EXPECT_NE(a["measurements"][0]["outcome"], b["measurements"][0]["outcome"]);
  EXPECT_EQ(b["effective"]["seed"], 99);
}

CompileOptions compile_options(const fs::path& dir) {
  CompileOptions o;
  o.k = 1.0e7;
  o.out_dir = dir.string();
  return o;
}

TEST(CompileTest, IdentityGivesAnEmptyLayout) {
  const auto dir = scratch("identity");
  std::ostringstream log;
  ASSERT_EQ(compile_command(compile_options(dir), log), kExitOk);
  const auto r = read_json(dir / "compile_report.json");
  EXPECT_TRUE(r["gates"].empty());
  EXPECT_LE(r["residual"].get<double>(), 1e-12);
  EXPECT_TRUE(fs::exists(dir / "layout.tsv"));
}

TEST(CompileTest, RotationAndSqueezeTargets) {
  const auto dir = scratch("targets");
  std::ostringstream log;
  auto o = compile_options(dir / "rot");
  o.matrix << std::cos(0.7), std::sin(0.7), -std::sin(0.7), std::cos(0.7);
  ASSERT_EQ(compile_command(o, log), kExitOk);
  auto r = read_json(dir / "rot" / "compile_report.json");
  ASSERT_EQ(r["gates"].size(), 1u);
  EXPECT_EQ(r["gates"][0]["gate"], "frft");
  EXPECT_LE(r["residual"].get<double>(), 1e-9);

  o = compile_options(dir / "sq");
  o.matrix << 2.0, 0.0, 0.0, 0.5;
  o.displacement << 0.3, -0.2;
  ASSERT_EQ(compile_command(o, log), kExitOk);
  r = read_json(dir / "sq" / "compile_report.json");
  EXPECT_LE(r["residual"].get<double>(), 1e-9);
  EXPECT_EQ(r["scale"]["d"].get<double>(), std::sqrt(kDefaultReferenceFocal / 1.0e7));
}

TEST(CompileTest, NonSymplecticTargetIsAnError) {
  const auto dir = scratch("bad");
  std::ostringstream log;
  auto o = compile_options(dir);
  o.matrix << 2.0, 0.0, 0.0, 2.0;
  EXPECT_EQ(compile_command(o, log), kExitError);
  EXPECT_NE(log.str().find("determinant"), std::string::npos);
}

TEST(ValidateTest, FastProfilePasses) {
  const auto dir = scratch("fast");
  std::ostringstream log;
  ValidateOptions o;
  o.out_dir = dir.string();
  EXPECT_EQ(validate_command(o, log), kExitOk) << log.str();
  const auto r = read_json(dir / "validate_report.json");
  EXPECT_EQ(r["status"], "ok");
  EXPECT_EQ(r["profile"], "fast");
}

TEST(ValidateTest, ChirpMutationIsCaught) {
  const auto dir = scratch("mutant");
  std::ostringstream log;
  ValidateOptions o;
  o.out_dir = dir.string();
  o.mutate_frft_chirp_sign = true;
  EXPECT_EQ(validate_command(o, log), kExitCheckFailed);
  const auto r = read_json(dir / "validate_report.json");
  bool frft_failed = false;
  for (const auto& c : r["checks"]) {
    if (c["name"] == "frft_dense_vs_fast") frft_failed = !c["passed"].get<bool>();
  }
  EXPECT_TRUE(frft_failed);
}

}  // namespace
}  // namespace spatialcv::cli
