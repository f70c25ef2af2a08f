#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(BLOCH_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string& name) {
  return std::string(BLOCH_FIXTURE_DIR) + "/" + name;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("bloch_cli_test_" + name);
}

TEST(CliTest, ValidateFixture) {
  auto r = run_cli("validate --input " + fixture("schrodinger_q2.json"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("Q = 2"), std::string::npos);
}

TEST(CliTest, ValidateEmitsCanonicalSpec) {
  auto out = temp_file("canonical.json");
  fs::remove(out);
  auto r = run_cli("validate --input " + fixture("period_half.json") + " --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(out);
  ASSERT_TRUE(in.good());
  nlohmann::json j;
  in >> j;
  EXPECT_EQ(j["kind"], "graph");
  EXPECT_EQ(j["vertices"], 2);
  fs::remove(out);
}

TEST(CliTest, AnalyzeCleanFixtureExitsZero) {
  auto out = temp_file("report_q2.json");
  fs::remove(out);
  auto r = run_cli("analyze --input " + fixture("schrodinger_q2.json") + " --out " + out.string());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(out);
  ASSERT_TRUE(in.good());
  nlohmann::json j;
  in >> j;
  EXPECT_EQ(j["all_hold"], true);
  EXPECT_EQ(j["operator"], "schrodinger_q2");
  EXPECT_EQ(j["tool_version"], "0.1.0");
  EXPECT_TRUE(j.contains("input_hash"));
  EXPECT_TRUE(j.contains("seed"));
  bool saw_squarefree = false;
  for (const auto& t : j["tests"]) {
    if (t["name"] == "squarefree") {
      saw_squarefree = true;
      EXPECT_EQ(t["verdict"], "holds");
    }
  }
  EXPECT_TRUE(saw_squarefree);
  fs::remove(out);
}

TEST(CliTest, AnalyzePeriodFixtureExitsFour) {
  auto out = temp_file("report_period.json");
  fs::remove(out);
  auto r = run_cli("analyze --input " + fixture("period_half.json") + " --out " + out.string());
  EXPECT_EQ(r.exit_code, 4) << r.output;
  std::ifstream in(out);
  nlohmann::json j;
  in >> j;
  EXPECT_EQ(j["all_hold"], false);
  bool saw_half_failure = false;
  for (const auto& t : j["tests"]) {
    if (t["name"] == "c_alpha(1/2)") {
      saw_half_failure = true;
      EXPECT_EQ(t["verdict"], "fails");
      EXPECT_NE(t["witness"].get<std::string>().find("identically zero"), std::string::npos);
    }
    if (t["name"] == "no_nontrivial_periods") {
      EXPECT_EQ(t["verdict"], "fails");
      EXPECT_NE(t["witness"].get<std::string>().find("1/2"), std::string::npos);
    }
  }
  EXPECT_TRUE(saw_half_failure);
  fs::remove(out);
}

TEST(CliTest, EmptyTestSelectionExitsZero) {
  auto out = temp_file("report_empty.json");
  fs::remove(out);
  auto r = run_cli("analyze --input " + fixture("period_half.json") + " --tests '' --out " +
                   out.string());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(out);
  nlohmann::json j;
  in >> j;
  // only the charpoly record remains
  EXPECT_EQ(j["tests"].size(), 1u);
  fs::remove(out);
}

TEST(CliTest, FloatLiteralExitsTwo) {
  auto r = run_cli("analyze --input " + fixture("bad_float.json"));
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("1/2"), std::string::npos);
}

TEST(CliTest, MissingConjugateEdgeExitsThree) {
  auto r = run_cli("analyze --input " + fixture("bad_edge.json"));
  EXPECT_EQ(r.exit_code, 3) << r.output;
  EXPECT_NE(r.output.find("0 -> 1"), std::string::npos);
}

TEST(CliTest, SweepWritesCsvAndReport) {
  auto csv = temp_file("bands.csv");
  auto rep = temp_file("overlap.json");
  fs::remove(csv);
  fs::remove(rep);
  auto r = run_cli("sweep --input " + fixture("free_1d.json") + " --N 16 --out " + csv.string() +
                   " --report " + rep.string());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::ifstream cin_(csv);
  std::string header;
  std::getline(cin_, header);
  EXPECT_EQ(header, "k_1,lambda_1");
  int rows = 0;
  std::string line;
  while (std::getline(cin_, line)) ++rows;
  EXPECT_EQ(rows, 16);
  std::ifstream rin(rep);
  nlohmann::json j;
  rin >> j;
  EXPECT_EQ(j["rho"], 0.125);
  fs::remove(csv);
  fs::remove(rep);
}

TEST(CliTest, SweepSinglePoint) {
  auto csv = temp_file("single.csv");
  fs::remove(csv);
  auto r = run_cli("sweep --input " + fixture("free_1d.json") + " --N 1 --out " + csv.string());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(csv);
  std::string header, row, extra;
  std::getline(in, header);
  ASSERT_TRUE(static_cast<bool>(std::getline(in, row)));
  EXPECT_EQ(row, "0,2");
  EXPECT_FALSE(static_cast<bool>(std::getline(in, extra)));
  fs::remove(csv);
}

TEST(CliTest, ResourceCapExitsFive) {
  auto r = run_cli("sweep --input " + fixture("free_1d.json") + " --N 100 --max-cells 50");
  EXPECT_EQ(r.exit_code, 5) << r.output;
  EXPECT_NE(r.output.find("resource cap"), std::string::npos);
}

TEST(CliTest, DecayFreeBandLaw) {
  auto csv = temp_file("decay.csv");
  fs::remove(csv);
  auto r = run_cli("decay --input " + fixture("free_1d.json") + " --N-range 8:64 --out " +
                   csv.string());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::string> expected = {"8,2,0.25", "16,2,0.125", "32,2,0.0625", "64,2,0.03125"};
  for (const auto& prefix : expected) {
    ASSERT_TRUE(static_cast<bool>(std::getline(in, line)));
    EXPECT_EQ(line.substr(0, prefix.size()), prefix);
  }
  fs::remove(csv);
}

TEST(CliTest, DecayPeriodFixtureFlagsAndExitsFour) {
  auto r = run_cli("decay --input " + fixture("period_half.json") + " --N-range 8:32");
  EXPECT_EQ(r.exit_code, 4) << r.output;
  EXPECT_NE(r.output.find("period suspected"), std::string::npos);
}

TEST(CliTest, BadRangeExitsTwo) {
  auto r = run_cli("decay --input " + fixture("free_1d.json") + " --N-range 8");
  EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST(CliTest, MissingFileExitsTwo) {
  auto r = run_cli("validate --input /nonexistent/nowhere.json");
  EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST(CliTest, CanonicalSpecRoundTripsThroughValidate) {
  auto out1 = temp_file("round1.json");
  auto out2 = temp_file("round2.json");
  fs::remove(out1);
  fs::remove(out2);
  ASSERT_EQ(run_cli("validate --input " + fixture("schrodinger_q22.json") + " --out " +
                    out1.string())
                .exit_code,
            0);
  ASSERT_EQ(run_cli("validate --input " + out1.string() + " --out " + out2.string()).exit_code, 0);
  std::ifstream a(out1), b(out2);
  nlohmann::json ja, jb;
  a >> ja;
  b >> jb;
  // identical up to the name, which follows the file stem
  ja.erase("name");
  jb.erase("name");
  EXPECT_EQ(ja, jb);
  fs::remove(out1);
  fs::remove(out2);
}

}  // namespace
