// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(NHPPP_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("nhppp_cli_test_" + name);
  std::ofstream(p) << content;
  return p;
}

TEST(Cli, StepSmoke) {
  const auto r = run("generate --algo step --values 1,2,3 --interval 0,3 --seed 1 --runs 2");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 1u);
  EXPECT_EQ(ls[0], "run_id,event_index,time");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const char run_id = ls[i][0];
    EXPECT_TRUE(run_id == '0' || run_id == '1') << ls[i];
  }
}

TEST(Cli, LogLinearTimesInInterval) {
  const auto r = run("generate --algo loglinear --alpha 1 --beta -0.02 --interval 8,10 --runs 50 --seed 3");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_GT(ls.size(), 1u);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const double t = std::stod(ls[i].substr(ls[i].rfind(',') + 1));
    EXPECT_GT(t, 8.0);
    EXPECT_LE(t, 10.0);
  }
}

TEST(Cli, ZeroRunsIsUsageError) {
  EXPECT_EQ(run("generate --algo step --values 1 --interval 0,1 --runs 0").code, 2);
}

TEST(Cli, IncompatibleFlagsAreUsageErrors) {
  EXPECT_EQ(run("generate --algo linear --alpha 1 --beta 0 --interval 0,1 --min-events 2").code, 2);
  EXPECT_EQ(run("generate --algo bogus").code, 2);
  EXPECT_EQ(run("generate --algo step --values 1 --breaks 0,1 --alpha 2 --beta 1").code, 2);
  EXPECT_EQ(run("generate --algo inversion --illustration --vectorized").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, DomainAndParseErrors) {
  EXPECT_EQ(run("generate --algo step --values 1,-2 --interval 0,1").code, 3);
  EXPECT_EQ(run("generate --algo step --values 1,abc --interval 0,1").code, 3);
  const auto bad = temp_file("bad.json", R"({"type":"piecewise","values":[1,2]})");
  EXPECT_EQ(run("generate --algo step --spec " + bad.string()).code, 3);
  EXPECT_EQ(run("generate --algo orderstats --values 0,0 --interval 0,1 --min-events 1").code, 3);
}

TEST(Cli, SpecFileCsvAndJson) {
  const auto csv = temp_file("spec.csv", "t_break,value\n0.5,1\n1,2\n2.4,\n");
  auto r = run("generate --algo step --spec " + csv.string() + " --runs 5 --seed 2 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 5u);
  for (const auto& row : j) {
    for (const auto& t : row) {
      EXPECT_GT(t.get<double>(), 0.5);
      EXPECT_LE(t.get<double>(), 2.4);
    }
  }
  const auto js = temp_file("spec.json", R"({"type":"linear","alpha":3,"beta":-0.5,"interval":[0,10]})");
  r = run("generate --algo orderstats --spec " + js.string() + " --runs 20 --seed 2");
  ASSERT_EQ(r.code, 0);
  for (const auto& l : lines(r.out)) {
    if (l.rfind("run_id", 0) == 0) continue;
    EXPECT_LE(std::stod(l.substr(l.rfind(',') + 1)), 6.0);
  }
}

TEST(Cli, DeterministicOutputAcrossJobs) {
  const std::string base = "generate --algo thinning --illustration --majorizer c --runs 40 --seed 9";
  const auto a = run(base), b = run(base), c = run(base + " --jobs 4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, SeedFromEnvironment) {
  const std::string args = "generate --algo step --values 2 --interval 0,1 --runs 3";
  setenv("NHPPP_SEED", "77", 1);
  const auto env = run(args);
  unsetenv("NHPPP_SEED");
  const auto flag = run(args + " --seed 77");
  const auto other = run(args + " --seed 78");
  EXPECT_EQ(env.out, flag.out);
  EXPECT_NE(env.out, other.out);
}

TEST(Cli, ConditioningFlags) {
  auto r = run("generate --algo orderstats --values 0.01 --interval 0,1 --at-least-1 --runs 30 --format json");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : nlohmann::json::parse(r.out)) EXPECT_GE(row.size(), 1u);
  r = run("generate --algo orderstats --values 1 --interval 0,1 --min-events 3 --exactly --runs 30 --format json");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : nlohmann::json::parse(r.out)) EXPECT_EQ(row.size(), 3u);
  r = run("generate --algo thinning --illustration --majorizer a --at-most-1 --runs 30 --format json");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : nlohmann::json::parse(r.out)) EXPECT_LE(row.size(), 1u);
}

TEST(Cli, VectorizedMatrix) {
  const auto r = run("generate --algo step --values 1,2 --interval 0,1 --runs 6 --vectorized --format matrix --seed 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 6u);
}

TEST(Cli, ValidateSmallRunsFlagged) {
  const auto r = run("validate --illustration --runs 100 --resamples 20 --time-resamples 5");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("note"));
  ASSERT_EQ(j["samplers"].size(), 5u);
}

TEST(Cli, ValidateOrderstatsTableLayout) {
  const auto r = run("validate --illustration --runs 10000 --algo orderstats --resamples 100 --time-resamples 20 --seed 5");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.contains("note"));
  const auto& c = j["samplers"][0]["counts"];
  EXPECT_LT(std::fabs(c["B_mu_rel"].get<double>()), 0.002);
  EXPECT_GT(c["chi2_p"].get<double>(), 0.99);
}

TEST(Cli, ValidateConstantRateSpec) {
  const auto r = run("validate --values 4 --interval 0,5 --runs 3000 --resamples 100 --time-resamples 20 --format csv");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);  // header plus thinning, inversion, orderstats
  for (std::size_t i = 1; i < ls.size(); ++i) {
    std::vector<std::string> cells;
    std::stringstream row(ls[i]);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    EXPECT_NEAR(std::stod(cells[3]), 20.0, 0.5) << ls[i];                 // sample_mean
    EXPECT_GT(std::stod(cells[23]), 0.001) << ls[i];                      // chi2_pearson_p
  }
}

TEST(Cli, BenchTable) {
  const auto r = run("bench --reps 5 --first-only --batch 1 --batch-reps 2");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "config,first_only,reps,median_us,q05_us,q25_us,q75_us,q95_us");
  EXPECT_EQ(ls.size(), 1u + 9u + 2u);
}

}  // namespace
