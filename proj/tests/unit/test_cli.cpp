#include "cli.hpp"
#include "json_out.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using greenwalk::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& stdin_text = {}) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("greenwalk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

greenwalk::cli::Json parse(const std::string& text) { return greenwalk::cli::Json::parse(text); }

}  // namespace

TEST_F(CliTest, GreenOnCompleteGraph) {
  const std::string k3 = write("k3.edges", "# undirected\n0 1\n1 2\n0 2\n");
  const Result r = invoke({"green", "--input", k3, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = parse(r.out);
  EXPECT_EQ(doc["n"], 3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(doc["rows"][i][i].get<double>(), 4.0 / 9.0, 1e-15);
  EXPECT_NEAR(doc["target"][0].get<double>(), 1.0 / 3.0, 1e-15);
  EXPECT_TRUE(doc["residuals"].contains("constraint"));
}

TEST_F(CliTest, CsvHasHeaderRow) {
  const std::string k3 = write("k3.edges", "# undirected\n0 1\n1 2\n0 2\n");
  const Result r = invoke({"hitting", "-i", k3, "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "0,1,2");
  EXPECT_EQ(row.substr(0, 2), "0,");
  EXPECT_NEAR(std::stod(row.substr(2, row.find(',', 2) - 2)), 2.0, 1e-14);
}

TEST_F(CliTest, FamilyMeasure) {
  const Result r = invoke({"family", "hypercube", "3", "--measure", "tmix"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "2.75\n");
  EXPECT_EQ(invoke({"family", "hypercube", "3", "--measure", "H(1,0)"}).out, "10\n");
  EXPECT_EQ(invoke({"family", "cycle", "5", "--measure", "thit"}).out, "4\n");
}

TEST_F(CliTest, FamilyReportIncludesPipelineChecks) {
  const Result r = invoke({"family", "bipartite", "2", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = parse(r.out);
  EXPECT_EQ(doc["family"], "bipartite");
  EXPECT_FALSE(doc["pipeline_checks"].empty());
  const std::string tree = write("t.edges", "# undirected\n0 1\n1 2\n1 3\n3 4\n");
  EXPECT_EQ(invoke({"family", "tree", "--input", tree}).code, 0);
}

TEST_F(CliTest, FamilyUsageErrors) {
  EXPECT_EQ(invoke({"family", "moebius", "3"}).code, 1);
  EXPECT_EQ(invoke({"family", "cycle"}).code, 1);
  EXPECT_EQ(invoke({"family", "cycle", "2"}).code, 1);
  EXPECT_EQ(invoke({"family", "cycle", "5", "--measure", "nope"}).code, 1);
}

TEST_F(CliTest, VerifyPassesOnGraphs) {
  const std::string dg = write("d.edges", "0 1 0.5\n1 2 1\n2 0 1\n1 0 0.25\n2 1 2\n");
  const Result r = invoke({"verify", "--input", dg});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(parse(r.out)["pass"].get<bool>());
  const std::string ug = write("u.json", R"({"n": 4, "undirected": true, "arcs": [[0,1,1],[1,2,2],[2,3,1],[3,0,1],[0,2,1]]})");
  const Result u = invoke({"verify", "--input", ug});
  ASSERT_EQ(u.code, 0) << u.err;
  EXPECT_TRUE(parse(u.out)["checks"].contains("spectral_hitting"));
}

TEST_F(CliTest, GreenRoundTripThroughVerify) {
  const std::string dg = write("d.edges", "0 1 0.5\n1 2 1\n2 0 1\n1 0 0.25\n2 1 2\n");
  for (const std::string target : {"pi", "1", "0.2,0.3,0.5"}) {
    const Result g = invoke({"green", "-i", dg, "--target", target});
    ASSERT_EQ(g.code, 0) << g.err;
    const std::string file = write("g.json", g.out);
    const Result v = invoke({"verify", "-i", dg, "--green", file});
    EXPECT_EQ(v.code, 0) << v.err;
  }
}

TEST_F(CliTest, TamperedGreenFailsIntegrity) {
  const std::string dg = write("d.edges", "0 1 0.5\n1 2 1\n2 0 1\n1 0 0.25\n2 1 2\n");
  auto doc = parse(invoke({"green", "-i", dg}).out);
  doc["rows"][0][1] = doc["rows"][0][1].get<double>() + 1e-3;
  const std::string file = write("bad.json", doc.dump());
  const Result v = invoke({"verify", "-i", dg, "--green", file});
  EXPECT_EQ(v.code, 2);
  EXPECT_TRUE(v.out.empty());
  EXPECT_NE(v.err.find("green_constraint"), std::string::npos);
}

TEST_F(CliTest, ByteIdenticalOutput) {
  const std::string dg = write("d.edges", "0 1 0.5\n1 2 1\n2 0 1\n1 0 0.25\n2 1 2\n");
  for (const std::string verb : {"hitting", "green", "exitfreq", "mixing", "dual"}) {
    EXPECT_EQ(invoke({verb, "-i", dg}).out, invoke({verb, "-i", dg}).out) << verb;
  }
  const std::vector<std::string> sim{"simulate", "-i", dg, "--start", "0", "--stop", "2", "--seed", "5", "--trials", "2000"};
  EXPECT_EQ(invoke(sim).out, invoke(sim).out);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"bogus"}).code, 1);
  EXPECT_EQ(invoke({"hitting"}).code, 1);
  EXPECT_EQ(invoke({"hitting", "-i", (dir_ / "missing").string()}).code, 1);
  const std::string bad = write("bad.edges", "0 1\n1 two\n");
  const Result parse_err = invoke({"hitting", "-i", bad});
  EXPECT_EQ(parse_err.code, 1);
  EXPECT_NE(parse_err.err.find("line 2"), std::string::npos);
  const std::string reducible = write("r.edges", "0 1\n1 0\n2 0\n");
  EXPECT_EQ(invoke({"green", "-i", reducible}).code, 1);
  const std::string dg = write("d.edges", "0 1\n1 2\n2 0\n");
  EXPECT_EQ(invoke({"spectral", "-i", dg}).code, 1);
  EXPECT_EQ(invoke({"green", "-i", dg, "--lazy", "1.5"}).code, 1);
  EXPECT_EQ(invoke({"green", "-i", dg, "--target", "7"}).code, 1);
  EXPECT_EQ(invoke({"simulate", "-i", dg}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, StdinInput) {
  const Result r = invoke({"hitting", "--input", "-", "--undirected"}, "0 1\n1 2\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r.out)["rows"][0][2].get<double>(), 4.0);
}

TEST_F(CliTest, SimulateReportsStatistics) {
  const std::string c5 = write("c5.edges", "# undirected\n0 1\n1 2\n2 3\n3 4\n4 0\n");
  const Result r = invoke({"simulate", "-i", c5, "--start", "0", "--stop", "2", "--seed", "42", "--trials", "100000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = parse(r.out);
  EXPECT_NEAR(doc["analytic"].get<double>(), 6.0, 1e-12);
  EXPECT_LE(std::abs(doc["z_score"].get<double>()), 4.0);
  const Result t = invoke({"simulate", "-i", c5, "--random-target", "--seed", "1", "--trials", "50000"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_LE(std::abs(parse(t.out)["z_score"].get<double>()), 4.0);
}

TEST_F(CliTest, DualAndMixingReports) {
  const std::string p3 = write("p3.edges", "# undirected\n0 1\n1 2\n");
  const auto dual = parse(invoke({"dual", "-i", p3}).out);
  EXPECT_NEAR(dual["pi_core"][1].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(dual["offsets"][1].get<double>(), 0.5, 1e-12);
  const auto mix = parse(invoke({"mixing", "-i", p3}).out);
  EXPECT_NEAR(mix["t_mix"].get<double>(), 1.5, 1e-12);
  EXPECT_NEAR(mix["t_forget"].get<double>(), 1.0, 1e-12);
}

TEST(NumberFormat, SeventeenDigits) {
  EXPECT_EQ(greenwalk::cli::format_number(2.75), "2.75");
  EXPECT_EQ(greenwalk::cli::format_number(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(greenwalk::cli::format_number(-0.0), "0");
}
