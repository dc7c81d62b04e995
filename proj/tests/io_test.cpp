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

#include <cmath>
#include <limits>

#include "hdfsim/io/config.hpp"
#include "hdfsim/io/format.hpp"
#include "hdfsim/io/report.hpp"
#include "hdfsim/io/trace.hpp"
#include "test_util.hpp"

namespace hdfsim::io {
namespace {

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(30.0), "30");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.5e-7), "1.5e-07");
  for (double v : {1.0 / 3.0, 2.684354, 5.36870912e9, 1e-300}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_THROW(format_number(std::numeric_limits<double>::quiet_NaN()), Error);
  EXPECT_THROW(format_number(std::numeric_limits<double>::infinity()), Error);
}

TEST(KeyValue, ParsesCommentsAndWhitespace) {
  const auto kv = KeyValueConfig::parse("# header\n  seed = 5 \n\ncost.bw_cross_rack=12500000\r\nname = a=b\n");
  EXPECT_EQ(kv.get<std::uint64_t>("seed"), 5u);
  EXPECT_EQ(kv.get<double>("cost.bw_cross_rack"), 12.5e6);
  EXPECT_EQ(kv.get_string("name"), "a=b");
  EXPECT_EQ(kv.get<int>("absent", 3), 3);
  EXPECT_THROW(kv.get<int>("absent"), Error);
  EXPECT_THROW(kv.get<int>("name"), Error);
}

TEST(KeyValue, ErrorsCarryLineNumbers) {
  auto line_of = [](const char* text) {
    try {
      KeyValueConfig::parse(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::Config);
      return e.line().value_or(0);
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("a=1\n\nbroken\n"), 3u);
  EXPECT_EQ(line_of("a=1\na=2\n"), 2u);
  EXPECT_EQ(line_of("=1\n"), 1u);
}

TEST(KeyValue, Booleans) {
  const auto kv = KeyValueConfig::parse("a=true\nb=0\nc=yes\n");
  EXPECT_TRUE(kv.get<bool>("a"));
  EXPECT_FALSE(kv.get<bool>("b"));
  EXPECT_THROW(kv.get<bool>("c"), Error);
}

TEST(Experiment, DefaultsAndRequiredKeys) {
  const auto ex = load_experiment(KeyValueConfig::parse("seed=1\ntopology=t.data\n"));
  EXPECT_EQ(ex.sim.seed, 1u);
  EXPECT_EQ(ex.topology_path, "t.data");
  EXPECT_TRUE(ex.job.is_data_heavy());
  EXPECT_EQ(std::get<DataHeavyJob>(ex.job.kind).file_size_bytes, 1ULL << 30);
  EXPECT_EQ(ex.sim.block_size_bytes, 64ULL << 20);
  EXPECT_EQ(ex.sim.cost.bw_cross_rack, 12.5e6);
  EXPECT_EQ(ex.sweep.rf_min, 1u);
  EXPECT_FALSE(ex.replication.max_rf.has_value());
  EXPECT_EQ(ex.resolved.at("cost.latency_in_rack"), "0.001");
  EXPECT_EQ(ex.resolved.at("job.file_size_bytes"), "1073741824");

  EXPECT_THROW(load_experiment(KeyValueConfig::parse("topology=t.data\n")), Error);
  EXPECT_THROW(load_experiment(KeyValueConfig::parse("seed=1\n")), Error);
}

TEST(Experiment, Rejections) {
  auto code_of = [](const char* text) {
    try {
      load_experiment(KeyValueConfig::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  EXPECT_EQ(code_of("seed=1\ntopology=t\nsweep.rf_maxx=3\n"), Errc::Config);
  EXPECT_EQ(code_of("seed=1\ntopology=t\njob.kind=reduce\n"), Errc::Config);
  EXPECT_EQ(code_of("seed=1\ntopology=t\ncost.bw_in_rack=0\n"), Errc::Config);
  EXPECT_EQ(code_of("seed=1\ntopology=t\nsim.map_slots_per_node=0\n"), Errc::Config);
  EXPECT_EQ(code_of("seed=-1\ntopology=t\n"), Errc::Config);
}

TEST(Experiment, ComputeHeavyTaskSecondsDefault) {
  const auto ex =
      load_experiment(KeyValueConfig::parse("seed=1\ntopology=t\njob.kind=compute_heavy\nsim.fixed_task_compute_seconds=4\n"));
  const auto& job = std::get<ComputeHeavyJob>(ex.job.kind);
  EXPECT_EQ(job.num_tasks, 56u);
  EXPECT_EQ(job.task_seconds, 4.0);
}

TEST(Experiment, ShippedConfigsLoad) {
  for (const char* name : {"compute_heavy.conf", "data_heavy.conf", "adaptive.conf"}) {
    const auto ex = load_experiment(KeyValueConfig::parse(testing::slurp(testing::data_path(name))));
    EXPECT_EQ(ex.topology_path, "topology.data") << name;
  }
}

TEST(Trace, AccessHistory) {
  const auto h = parse_access_history("t_seconds,count\n0,0\n10,5\n\n20,10\n");
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h.samples()[2].t, 20.0);
  EXPECT_EQ(h.samples()[2].count, 10.0);
  EXPECT_EQ(parse_access_history("t_seconds,count\n").size(), 0u);
}

TEST(Trace, AccessHistoryErrors) {
  auto line_of = [](const char* text) {
    try {
      parse_access_history(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::MalformedLine);
      return e.line().value_or(0);
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("time,count\n"), 1u);
  EXPECT_EQ(line_of("t_seconds,count\n0,0\n1,x\n"), 3u);
  EXPECT_EQ(line_of("t_seconds,count\n0,0\n1,2,3\n"), 3u);
  EXPECT_EQ(line_of("t_seconds,count\n5,0\n5,1\n"), 3u);
  EXPECT_EQ(line_of("t_seconds,count\n0,4\n1,3\n"), 3u);
  EXPECT_EQ(line_of(""), 1u);
}

TEST(Trace, AccessEvents) {
  const auto two = parse_access_events("t_seconds,file_id\n1,7\n1,8\n");
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[1].file_id, 8u);
  EXPECT_EQ(two[1].count, 1u);
  const auto three = parse_access_events("t_seconds,file_id,count\n0.5,7,4\n");
  EXPECT_EQ(three[0].count, 4u);
  EXPECT_THROW(parse_access_events("t_seconds,file_id\n2,1\n1,1\n"), Error);
  EXPECT_THROW(parse_access_events("t_seconds,file_id,count\n2,1,0\n"), Error);
  EXPECT_THROW(parse_access_events("t_seconds,file_id\n-2,1\n"), Error);
  EXPECT_THROW(parse_access_events("t_seconds,count\n"), Error);
}

TEST(Trace, ShippedSteadyTrace) {
  const auto events = parse_access_events(testing::slurp(testing::data_path("traces/steady_and_cold.csv")));
  EXPECT_EQ(events.size(), 110u);
}

TEST(Report, ResultsCsv) {
  SweepResult s;
  s.rows.push_back({1, 280.0, 12.5, 0.25, 0.5, 0.25, 0.0});
  s.rows.push_back({2, 62.0, 0.0, 1.0, 0.0, 0.0, 86.0});
  EXPECT_EQ(results_csv(s),
            "rf,mean_completion_s,stddev_s,node_local_frac,rack_local_frac,off_rack_frac,mean_update_cost_s\n"
            "1,280,12.5,0.25,0.5,0.25,0\n"
            "2,62,0,1,0,0,86\n");
}

TEST(Report, DecisionLogCsv) {
  std::vector<DecisionRecord> log{{1, {9, 3, 5, 10.0, DecisionReason::ScaleUp}, 10.75}};
  EXPECT_EQ(decision_log_csv(log),
            "epoch,file_id,rf_old,rf_new,predicted_count,reason,update_cost_s\n"
            "1,9,3,5,10,ScaleUp,10.75\n");
  EXPECT_EQ(decision_log_csv({}), "epoch,file_id,rf_old,rf_new,predicted_count,reason,update_cost_s\n");
}

TEST(Report, SimResultJson) {
  SimResult r;
  r.completion_seconds = 1.5;
  r.locality_histogram = {3, 2, 1};
  r.tasks_total = 6;
  EXPECT_EQ(to_json(r).dump(),
            R"({"completion_seconds":1.5,"locality_histogram":{"NodeLocal":3,"RackLocal":2,"OffRack":1},)"
            R"("ingest_update_cost_seconds":0.0,"tasks_total":6})");
}

TEST(Report, SvgEmbedsManifest) {
  SweepResult s;
  s.rows.push_back({1, 10.0, 0, 1, 0, 0, 0});
  s.rows.push_back({2, 5.0, 0, 1, 0, 0, 0});
  RunManifest m;
  m.tool_version = "0.1.0";
  m.command = "sweep";
  m.seed = 12;
  m.parameters["job.kind"] = "a<b";
  const auto svg = results_svg(s, "t", &m);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<metadata>"), std::string::npos);
  EXPECT_NE(svg.find("a&lt;b"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(svg.find("a<b"), std::string::npos);
  EXPECT_EQ(results_svg(s, "t", &m), svg);
}

}  // namespace
}  // namespace hdfsim::io
