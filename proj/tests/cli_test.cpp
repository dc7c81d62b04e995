// Copyright 2026 The hdfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "hdfsim/io/trace.hpp"
#include "hdfsim/topology.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace hdfsim {
namespace {

using testing::data_path;
using testing::quote;
using testing::run;

const std::string kCli = quote(HDFSIM_CLI);

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(CliResolve, ListedHosts) {
  const auto r = run(kCli + " topology resolve -t " + quote(data_path("topology.data")) + " Machine1.pc Machine8.pc");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "/dc1/rack1 /dc4/rack4 ");
}

TEST(CliResolve, MatchesLibraryOutput) {
  const std::vector<std::string> hosts{"Machine5.pc", "nobody", "Machine2.pc", "Machine5.pc"};
  std::string args;
  for (const auto& h : hosts) args += " " + h;
  const auto r = run(kCli + " topology resolve -t " + quote(data_path("topology.data")) + args);
  EXPECT_EQ(r.exit_code, 0);
  const auto topo = parse_topology(testing::slurp(data_path("topology.data")));
  EXPECT_EQ(r.out, emit_mapping_output(topo, hosts));
}

TEST(CliResolve, NoHostsAndUnknownHost) {
  const auto none = run(kCli + " topology resolve -t " + quote(data_path("topology.data")));
  EXPECT_EQ(none.exit_code, 0);
  EXPECT_EQ(none.out, "");
  const auto unknown = run(kCli + " topology resolve -t " + quote(data_path("topology.data")) + " ghost.pc");
  EXPECT_EQ(unknown.out, "/default/rack ");
}

TEST(CliResolve, ParseErrorNamesLine) {
  testing::TempDir tmp;
  testing::spit(tmp / "bad.data", "a /r1\nb /r1\nc rack-without-slash\n");
  const auto r = run(kCli + " topology resolve -t " + quote((tmp / "bad.data").string()) + " a");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(r.out, "");
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(CliResolve, MissingFileAndBadUsage) {
  EXPECT_EQ(run(kCli + " topology resolve -t /nonexistent/topology.data a").exit_code, 2);
  EXPECT_EQ(run(kCli + " topology resolve").exit_code, 2);
  EXPECT_EQ(run(kCli + " frobnicate").exit_code, 2);
  EXPECT_EQ(run(kCli + " --version").exit_code, 0);
}

TEST(CliPredict, LinearTrace) {
  const auto r = run(kCli + " predict --trace " + quote(data_path("traces/linear_history.csv")) + " -w 4");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "30,15,3\n");
}

TEST(CliPredict, QuadraticTraceMatchesOracle) {
  const auto r = run(kCli + " predict --trace " + quote(data_path("traces/quadratic_history.csv")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_EQ(rows[0].size(), 3u);
  EXPECT_EQ(std::stod(rows[0][0]), 3.0);
  const double want = oracle::vandermonde_eval({{0, 0}, {1, 1}, {2, 8}}, 3.0);
  EXPECT_TRUE(oracle::close_rel(std::stod(rows[0][1]), want, 1e-9)) << rows[0][1] << " vs " << want;
  EXPECT_EQ(rows[0][2], "3");
}

TEST(CliPredict, InsufficientHistory) {
  testing::TempDir tmp;
  testing::spit(tmp / "one.csv", "t_seconds,count\n0,4\n");
  const auto r = run(kCli + " predict --trace " + quote((tmp / "one.csv").string()));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("insufficient history"), std::string::npos) << r.err;
}

TEST(CliPredict, MalformedTrace) {
  testing::TempDir tmp;
  testing::spit(tmp / "bad.csv", "t_seconds,count\n0,4\n1,four\n");
  const auto r = run(kCli + " predict --trace " + quote((tmp / "bad.csv").string()));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_EQ(run(kCli + " predict --trace " + quote(data_path("traces/linear_history.csv")) + " -w 1").exit_code, 2);
}

class CliRun : public ::testing::Test {
 protected:
  testing::TempDir tmp;

  std::string write_config(const std::string& body) {
    const auto path = tmp / "exp.conf";
    testing::spit(path, "topology = " + data_path("topology.data") + "\n" + body);
    return path.string();
  }
};

TEST_F(CliRun, SweepWritesOutputs) {
  const auto conf = write_config("seed = 3\njob.kind = compute_heavy\njob.num_tasks = 20\nsim.runs_per_point = 4\nsweep.rf_max = 7\n");
  const auto out = (tmp / "out").string();
  const auto r = run(kCli + " sweep -c " + quote(conf) + " -o " + quote(out));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto csv = testing::slurp(tmp / "out" / "results.csv");
  EXPECT_EQ(csv, r.out);
  const auto rows = csv_rows(csv);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0][0], "rf");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 7u);
    EXPECT_EQ(rows[i][0], std::to_string(i));
    const double sum = std::stod(rows[i][3]) + std::stod(rows[i][4]) + std::stod(rows[i][5]);
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  const auto svg = testing::slurp(tmp / "out" / "results.svg");
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  const auto manifest = nlohmann::json::parse(testing::slurp(tmp / "out" / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 3);
  EXPECT_EQ(manifest["command"], "sweep");
  EXPECT_EQ(manifest["parameters"]["job.num_tasks"], "20");
  EXPECT_EQ(manifest["notes"]["completion_includes_ingest_cost"], "false");

  const auto again = run(kCli + " sweep -c " + quote(conf) + " -o " + quote((tmp / "again").string()));
  EXPECT_EQ(testing::slurp(tmp / "again" / "results.csv"), csv);
}

TEST_F(CliRun, SweepRfAboveNodeCount) {
  const auto conf = write_config("seed = 3\nsweep.rf_max = 9\n");
  const auto r = run(kCli + " sweep -c " + quote(conf) + " -o " + quote((tmp / "out").string()));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.err.find("rf_max"), std::string::npos) << r.err;
}

TEST_F(CliRun, SweepConfigErrors) {
  EXPECT_EQ(run(kCli + " sweep -c " + quote(write_config("sweep.rf_max = 2\n"))).exit_code, 2);
  const auto unknown = run(kCli + " sweep -c " + quote(write_config("seed = 1\nsweep.rfmax = 2\n")));
  EXPECT_EQ(unknown.exit_code, 2);
  EXPECT_NE(unknown.err.find("sweep.rfmax"), std::string::npos);
  EXPECT_EQ(run(kCli + " sweep -c " + quote(write_config("seed = 1\nthis is not a pair\n"))).exit_code, 2);
  EXPECT_EQ(run(kCli + " sweep -c " + quote((tmp / "missing.conf").string())).exit_code, 2);
}

TEST_F(CliRun, AdaptiveHeaderOnlyTrace) {
  const auto out = tmp / "out";
  const auto r = run(kCli + " adaptive -c " + quote(data_path("adaptive.conf")) + " --trace " +
                     quote(data_path("traces/header_only.csv")) + " -o " + quote(out.string()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(testing::slurp(out / "decisions.csv"), "epoch,file_id,rf_old,rf_new,predicted_count,reason,update_cost_s\n");
  EXPECT_TRUE(std::filesystem::exists(out / "manifest.json"));
}

TEST_F(CliRun, AdaptiveSteadyAndCold) {
  const auto out = tmp / "out";
  const auto r = run(kCli + " adaptive -c " + quote(data_path("adaptive.conf")) + " --trace " +
                     quote(data_path("traces/steady_and_cold.csv")) + " -o " + quote(out.string()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = csv_rows(testing::slurp(out / "decisions.csv"));
  ASSERT_GT(rows.size(), 4u);
  std::vector<std::string> last_steady, last_cold;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 7u);
    (rows[i][1] == "1" ? last_steady : last_cold) = rows[i];
  }
  EXPECT_EQ(last_steady[3], "5");
  EXPECT_EQ(last_steady[5], "Hold");
  EXPECT_EQ(last_cold[3], "1");
  const auto manifest = nlohmann::json::parse(testing::slurp(out / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 7);
  EXPECT_EQ(manifest["command"], "adaptive");
}

TEST_F(CliRun, AdaptiveBadTrace) {
  testing::spit(tmp / "t.csv", "t_seconds,file_id\n5,1\n4,1\n");
  const auto r = run(kCli + " adaptive -c " + quote(data_path("adaptive.conf")) + " --trace " +
                     quote((tmp / "t.csv").string()) + " -o " + quote((tmp / "out").string()));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace hdfsim
