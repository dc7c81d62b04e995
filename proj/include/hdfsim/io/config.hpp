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

#pragma once

// Flat key=value experiment configuration with dotted section prefixes.
// See configs/README.md for the full key list.

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hdfsim/adaptive.hpp"
#include "hdfsim/error.hpp"
#include "hdfsim/io/format.hpp"
#include "hdfsim/replication.hpp"
#include "hdfsim/sim.hpp"
#include "hdfsim/sweep.hpp"

namespace hdfsim::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
  } else {
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
  }
  return value;
}

}  // namespace detail

class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text) {
    KeyValueConfig cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() : nl + 1;
      ++line_no;
      const auto line = detail::trim(raw);
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw Error(Errc::Config, "line " + std::to_string(line_no) + ": expected key=value", line_no);
      }
      const auto key = std::string(detail::trim(line.substr(0, eq)));
      const auto value = std::string(detail::trim(line.substr(eq + 1)));
      if (key.empty()) throw Error(Errc::Config, "line " + std::to_string(line_no) + ": empty key", line_no);
      if (!cfg.values_.emplace(key, value).second) {
        throw Error(Errc::Config, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'", line_no);
      }
    }
    return cfg;
  }

  bool has(const std::string& key) const { return values_.contains(key); }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, std::optional<std::string> fallback = std::nullopt) const {
    const auto it = values_.find(key);
    if (it != values_.end()) return it->second;
    if (fallback) return *fallback;
    throw Error(Errc::Config, "missing required key '" + key + "'");
  }

  template <class T>
  T get(const std::string& key, std::optional<T> fallback = std::nullopt) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      if (fallback) return *fallback;
      throw Error(Errc::Config, "missing required key '" + key + "'");
    }
    if constexpr (std::is_same_v<T, bool>) {
      if (it->second == "true" || it->second == "1") return true;
      if (it->second == "false" || it->second == "0") return false;
      throw Error(Errc::Config, "key '" + key + "': expected true or false, got '" + it->second + "'");
    } else {
      const auto v = detail::parse_number<T>(it->second);
      if (!v) throw Error(Errc::Config, "key '" + key + "': cannot parse '" + it->second + "'");
      return *v;
    }
  }

  /// Throws on the first key not in `known`.
  void reject_unknown(const std::set<std::string>& known) const {
    for (const auto& [k, _] : values_) {
      if (!known.contains(k)) throw Error(Errc::Config, "unknown key '" + k + "'");
    }
  }

 private:
  std::map<std::string, std::string> values_;
};

/// Everything a sweep or adaptive run needs, resolved from a config file.
struct ExperimentConfig {
  std::string topology_path;
  SimConfig sim;
  JobSpec job;
  SweepOptions sweep;
  ReplicationConfig replication;
  AdaptiveConfig adaptive;

  /// Every key with its resolved value, defaults included, for the manifest.
  std::map<std::string, std::string> resolved;
};

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "seed",
      "topology",
      "sim.block_size_bytes",
      "sim.map_slots_per_node",
      "sim.compute_rate",
      "sim.fixed_task_compute_seconds",
      "sim.runs_per_point",
      "sim.exclude_master",
      "cost.bw_in_rack",
      "cost.bw_cross_rack",
      "cost.latency_in_rack",
      "cost.latency_cross_rack",
      "job.kind",
      "job.file_size_bytes",
      "job.num_tasks",
      "job.task_seconds",
      "sweep.rf_min",
      "sweep.rf_max",
      "sweep.include_ingest_cost",
      "sweep.threads",
      "replication.min_rf",
      "replication.max_rf",
      "replication.accesses_per_replica",
      "replication.hysteresis",
      "adaptive.epoch_seconds",
      "adaptive.initial_rf",
      "adaptive.file_size_bytes",
      "adaptive.window",
      "adaptive.epochs",
  };
  return keys;
}

inline ExperimentConfig load_experiment(const KeyValueConfig& kv) {
  kv.reject_unknown(known_keys());
  ExperimentConfig ex;
  auto& r = ex.resolved;
  auto u64 = [&](const std::string& key, std::uint64_t def) {
    const auto v = kv.get<std::uint64_t>(key, def);
    r[key] = std::to_string(v);
    return v;
  };
  auto f64 = [&](const std::string& key, double def) {
    const auto v = kv.get<double>(key, def);
    r[key] = format_number(v);
    return v;
  };
  auto flag = [&](const std::string& key, bool def) {
    const auto v = kv.get<bool>(key, def);
    r[key] = v ? "true" : "false";
    return v;
  };

  // No time-based fallback: every run must be replayable from its config.
  ex.sim.seed = kv.get<std::uint64_t>("seed");
  r["seed"] = std::to_string(ex.sim.seed);
  ex.topology_path = kv.get_string("topology");
  r["topology"] = ex.topology_path;

  ex.sim.block_size_bytes = u64("sim.block_size_bytes", kDefaultBlockSize);
  ex.sim.map_slots_per_node = u64("sim.map_slots_per_node", 2);
  ex.sim.compute_rate = f64("sim.compute_rate", 50e6);
  ex.sim.fixed_task_compute_seconds = f64("sim.fixed_task_compute_seconds", 10.0);
  ex.sim.runs_per_point = u64("sim.runs_per_point", 8);
  ex.sim.exclude_master = flag("sim.exclude_master", true);
  ex.sim.cost.bw_in_rack = f64("cost.bw_in_rack", 100e6);
  ex.sim.cost.bw_cross_rack = f64("cost.bw_cross_rack", 12.5e6);
  ex.sim.cost.latency_in_rack = f64("cost.latency_in_rack", 0.001);
  ex.sim.cost.latency_cross_rack = f64("cost.latency_cross_rack", 0.005);

  const auto kind = kv.get_string("job.kind", "data_heavy");
  r["job.kind"] = kind;
  if (kind == "data_heavy") {
    ex.job = JobSpec::data_heavy(u64("job.file_size_bytes", 1ULL << 30));
  } else if (kind == "compute_heavy") {
    const auto tasks = u64("job.num_tasks", 56);
    ex.job = JobSpec::compute_heavy(tasks, f64("job.task_seconds", ex.sim.fixed_task_compute_seconds));
  } else {
    throw Error(Errc::Config, "key 'job.kind': expected data_heavy or compute_heavy, got '" + kind + "'");
  }

  ex.sweep.rf_min = u64("sweep.rf_min", 1);
  ex.sweep.rf_max = u64("sweep.rf_max", 3);
  ex.sweep.include_ingest_cost = flag("sweep.include_ingest_cost", true);
  ex.sweep.threads = static_cast<unsigned>(kv.get<std::uint64_t>("sweep.threads", 0));

  ex.replication.min_rf = u64("replication.min_rf", 1);
  if (kv.has("replication.max_rf")) ex.replication.max_rf = u64("replication.max_rf", 0);
  ex.replication.accesses_per_replica = f64("replication.accesses_per_replica", 2.0);
  ex.replication.hysteresis = u64("replication.hysteresis", 1);

  ex.adaptive.epoch_seconds = f64("adaptive.epoch_seconds", 60.0);
  ex.adaptive.initial_rf = u64("adaptive.initial_rf", 3);
  ex.adaptive.file_size_bytes = u64("adaptive.file_size_bytes", ex.sim.block_size_bytes);
  ex.adaptive.window = u64("adaptive.window", kDefaultPredictionWindow);
  if (kv.has("adaptive.epochs")) ex.adaptive.epochs = u64("adaptive.epochs", 0);

  try {
    ex.sim.validate();
    ex.job.validate();
    ex.replication.validate();
    ex.adaptive.validate();
  } catch (const Error& e) {
    throw Error(Errc::Config, e.what());
  }
  return ex;
}

}  // namespace hdfsim::io
