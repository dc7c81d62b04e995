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

// hdfsim command-line runner.
//
//   hdfsim topology resolve -t topology.data HOST...
//   hdfsim sweep -c sweep.conf [-o OUTDIR]
//   hdfsim predict --trace history.csv [--window N]
//   hdfsim adaptive -c adaptive.conf --trace events.csv [-o OUTDIR]
//
// Exit codes: 0 success, 2 input error, 3 precondition or simulation error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdfsim/hdfsim.hpp"
#include "hdfsim/io/config.hpp"
#include "hdfsim/io/report.hpp"
#include "hdfsim/io/trace.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitSimulation = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
}

bool is_input_error(hdfsim::Errc code) {
  using hdfsim::Errc;
  switch (code) {
    case Errc::MalformedLine:
    case Errc::InvalidRackPath:
    case Errc::DuplicateNode:
    case Errc::DuplicateAbscissa:
    case Errc::EmptyPointSet:
    case Errc::InsufficientHistory:
    case Errc::Config:
      return true;
    default:
      return false;
  }
}

hdfsim::ClusterTopology load_topology(const fs::path& path) {
  try {
    return hdfsim::parse_topology(read_file(path));
  } catch (const hdfsim::Error& e) {
    throw hdfsim::Error(e.code(), path.string() + ": " + e.what(), e.line());
  }
}

struct LoadedConfig {
  fs::path config_path;
  fs::path topology_path;
  hdfsim::io::ExperimentConfig experiment;
  hdfsim::ClusterTopology topology;
};

LoadedConfig load_config(const fs::path& config_path) {
  LoadedConfig out;
  out.config_path = config_path;
  try {
    out.experiment = hdfsim::io::load_experiment(hdfsim::io::KeyValueConfig::parse(read_file(config_path)));
  } catch (const hdfsim::Error& e) {
    throw hdfsim::Error(e.code(), config_path.string() + ": " + e.what(), e.line());
  }
  // Relative topology paths are resolved against the config file's directory.
  out.topology_path = out.experiment.topology_path;
  if (out.topology_path.is_relative()) out.topology_path = config_path.parent_path() / out.topology_path;
  out.topology = load_topology(out.topology_path);
  return out;
}

hdfsim::io::RunManifest make_manifest(const std::string& command, const LoadedConfig& cfg) {
  hdfsim::io::RunManifest m;
  m.tool_version = std::string(hdfsim::kVersion);
  m.command = command;
  m.config_path = cfg.config_path.generic_string();
  m.topology_path = cfg.experiment.topology_path;
  m.seed = cfg.experiment.sim.seed;
  m.parameters = cfg.experiment.resolved;
  m.notes["seed_derivation"] = "run i of point rf uses seed ^ splitmix64(rf) ^ splitmix64(~i)";
  return m;
}

int cmd_topology_resolve(const std::string& topology_path, const std::vector<std::string>& hosts) {
  const auto topo = load_topology(topology_path);
  std::cout << hdfsim::emit_mapping_output(topo, hosts) << std::flush;
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
  const auto cfg = load_config(config_path);
  const auto& ex = cfg.experiment;
  const auto eligible = hdfsim::eligible_nodes(cfg.topology, ex.sim.placement()).size();
  if (ex.sweep.rf_max > eligible) {
    std::cerr << "error: key 'sweep.rf_max': rf_max=" << ex.sweep.rf_max << " exceeds the " << eligible
              << " eligible nodes\n";
    return kExitSimulation;
  }
  if (ex.sweep.rf_min < 1 || ex.sweep.rf_min > ex.sweep.rf_max) {
    std::cerr << "error: key 'sweep.rf_min': need 1 <= rf_min <= rf_max\n";
    return kExitInput;
  }

  const auto sweep = hdfsim::run_sweep(std::make_shared<const hdfsim::ClusterTopology>(cfg.topology), ex.sim, ex.job,
                                       ex.sweep);
  auto manifest = make_manifest("sweep", cfg);
  const bool ingest_included = ex.job.is_data_heavy() && ex.sweep.include_ingest_cost;
  manifest.notes["completion_includes_ingest_cost"] = ingest_included ? "true" : "false";
  manifest.notes["outputs"] = "results.csv,results.svg,manifest.json";

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / "results.csv", hdfsim::io::results_csv(sweep));
  const std::string title = ex.job.is_data_heavy() ? "Data-heavy job: completion vs replication factor"
                                                   : "Compute-heavy job: completion vs replication factor";
  write_file(dir / "results.svg", hdfsim::io::results_svg(sweep, title, &manifest));
  write_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  std::cout << hdfsim::io::results_csv(sweep);
  return 0;
}

int cmd_predict(const std::string& trace_path, std::size_t window) {
  if (window < 2) throw InputError("--window must be at least 2");
  const auto history = hdfsim::io::parse_access_history(read_file(trace_path));
  const auto p = hdfsim::predict_next(history, window);
  std::cout << hdfsim::io::format_number(p.t_next) << ',' << hdfsim::io::format_number(p.count_next) << ','
            << p.window_used << '\n';
  return 0;
}

int cmd_adaptive(const std::string& config_path, const std::string& trace_path, const std::string& out_dir) {
  const auto cfg = load_config(config_path);
  const auto& ex = cfg.experiment;
  const auto events = hdfsim::io::parse_access_events(read_file(trace_path));

  auto cluster = hdfsim::build_cluster(cfg.topology, ex.sim);
  const auto rep = ex.replication.resolved(cluster.compute_nodes.size());
  if (*rep.max_rf > cluster.compute_nodes.size()) {
    std::cerr << "error: key 'replication.max_rf': max_rf=" << *rep.max_rf << " exceeds the "
              << cluster.compute_nodes.size() << " eligible nodes\n";
    return kExitSimulation;
  }
  hdfsim::Rng rng(ex.sim.seed);
  const auto result = hdfsim::run_adaptive(cluster, events, ex.adaptive, rep, rng);

  auto manifest = make_manifest("adaptive", cfg);
  manifest.notes["trace_path"] = fs::path(trace_path).generic_string();
  manifest.notes["outputs"] = "decisions.csv,epochs.csv,replicas.jsonl,manifest.json";

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / "decisions.csv", hdfsim::io::decision_log_csv(result.log));
  write_file(dir / "epochs.csv", hdfsim::io::epochs_csv(result.epochs));
  write_file(dir / "replicas.jsonl", hdfsim::io::replicas_jsonl(cluster));
  write_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  std::cout << hdfsim::io::decision_log_csv(result.log);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rack-aware HDFS replica placement and replication simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hdfsim::kVersion));

  auto* topology = app.add_subcommand("topology", "Topology utilities");
  topology->require_subcommand(1);
  auto* resolve = topology->add_subcommand("resolve", "Print the rack of each host, like a topology script");
  std::string topology_path;
  std::vector<std::string> hosts;
  resolve->add_option("-t,--topology", topology_path, "topology.data file")->required();
  resolve->add_option("hosts", hosts, "Hosts to resolve");

  auto* sweep = app.add_subcommand("sweep", "Run a replication-factor sweep");
  std::string config_path;
  std::string out_dir = ".";
  sweep->add_option("-c,--config", config_path, "Experiment config file")->required();
  sweep->add_option("-o,--out", out_dir, "Output directory");

  auto* predict = app.add_subcommand("predict", "Predict the next access from a t_seconds,count trace");
  std::string trace_path;
  std::size_t window = hdfsim::kDefaultPredictionWindow;
  predict->add_option("--trace", trace_path, "Access history CSV")->required();
  predict->add_option("-w,--window", window, "Trailing samples to interpolate")->capture_default_str();

  auto* adaptive = app.add_subcommand("adaptive", "Replay an access trace through the adaptive replication loop");
  adaptive->add_option("-c,--config", config_path, "Experiment config file")->required();
  adaptive->add_option("--trace", trace_path, "Access events CSV (t_seconds,file_id[,count])")->required();
  adaptive->add_option("-o,--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (resolve->parsed()) return cmd_topology_resolve(topology_path, hosts);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir);
    if (predict->parsed()) return cmd_predict(trace_path, window);
    if (adaptive->parsed()) return cmd_adaptive(config_path, trace_path, out_dir);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const hdfsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitSimulation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSimulation;
  }
  return 0;
}
