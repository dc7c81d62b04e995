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

// Epoch-driven adaptive replication. At the end of every epoch each known
// file gets a (time, cumulative count) sample; once two samples exist the
// next access is predicted, the expected number of further accesses is
// turned into a replication factor, and the change is enacted.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdfsim/error.hpp"
#include "hdfsim/prediction.hpp"
#include "hdfsim/random.hpp"
#include "hdfsim/replication.hpp"
#include "hdfsim/sim.hpp"

namespace hdfsim {

struct AccessEvent {
  double t = 0.0;
  std::uint64_t file_id = 0;  // external id as it appears in the trace
  std::uint64_t count = 1;    // accesses at this instant
};

struct AdaptiveConfig {
  double epoch_seconds = 60.0;
  std::size_t initial_rf = 3;
  std::uint64_t file_size_bytes = kDefaultBlockSize;
  std::size_t window = kDefaultPredictionWindow;
  // Number of epochs to simulate; unset runs until the epoch holding the last event.
  std::optional<std::size_t> epochs;

  void validate() const {
    if (!(epoch_seconds > 0)) throw Error(Errc::InvalidArgument, "epoch_seconds must be positive");
    if (initial_rf < 1) throw Error(Errc::InvalidArgument, "initial_rf must be at least 1");
    if (file_size_bytes == 0) throw Error(Errc::InvalidArgument, "file_size_bytes must be positive");
    if (window < 2) throw Error(Errc::InvalidArgument, "window must be at least 2");
  }
};

struct DecisionRecord {
  std::size_t epoch = 0;  // 0-based; the epoch ending at (epoch + 1) * epoch_seconds
  ReplicationDecision decision;
  double update_cost_s = 0.0;

  bool operator==(const DecisionRecord&) const = default;
};

struct EpochResult {
  std::size_t epoch = 0;
  // Map phases of one job per file accessed during the epoch, run back to
  // back on the placement in force during the epoch. The ingest/update cost
  // covers files first seen in the epoch plus the decisions taken at its end.
  SimResult sim;
};

struct AdaptiveResult {
  std::vector<DecisionRecord> log;
  std::vector<EpochResult> epochs;
};

inline AdaptiveResult run_adaptive(ClusterState& cluster, std::span<const AccessEvent> trace,
                                   const AdaptiveConfig& cfg, const ReplicationConfig& rep_cfg, Rng& rng) {
  cfg.validate();
  const auto rcfg = rep_cfg.resolved(cluster.compute_nodes.size());
  rcfg.validate();
  if (*rcfg.max_rf > cluster.compute_nodes.size()) {
    throw Error(Errc::ReplicationFactorTooLarge, "max_rf exceeds the number of eligible nodes");
  }
  if (cfg.initial_rf < rcfg.min_rf || cfg.initial_rf > *rcfg.max_rf) {
    throw Error(Errc::InvalidArgument, "initial_rf must lie in [min_rf, max_rf]");
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!(trace[i].t >= 0)) throw Error(Errc::InvalidArgument, "trace times must be non-negative");
    if (i > 0 && trace[i].t < trace[i - 1].t) throw Error(Errc::InvalidArgument, "trace times must be non-decreasing");
  }

  AdaptiveResult out;
  if (trace.empty()) return out;

  const auto epochs =
      cfg.epochs.value_or(static_cast<std::size_t>(std::floor(trace.back().t / cfg.epoch_seconds)) + 1);

  struct Tracked {
    FileId file;
    std::size_t rf;
    double cumulative = 0.0;
    AccessHistory history;
  };
  std::map<std::uint64_t, Tracked> tracked;  // by external id

  std::size_t cursor = 0;
  for (std::size_t e = 0; e < epochs; ++e) {
    const double end = static_cast<double>(e + 1) * cfg.epoch_seconds;
    EpochResult epoch{e, {}};
    std::map<std::uint64_t, bool> touched;
    for (; cursor < trace.size() && trace[cursor].t < end; ++cursor) {
      const auto& ev = trace[cursor];
      auto it = tracked.find(ev.file_id);
      if (it == tracked.end()) {
        const auto& writer = rng.pick(std::span<const std::string>(cluster.compute_nodes));
        const auto ingest = ingest_file(cluster, cfg.file_size_bytes, writer, cfg.initial_rf, rng);
        epoch.sim.ingest_update_cost_seconds += ingest.cost_seconds;
        it = tracked.emplace(ev.file_id, Tracked{ingest.file, cfg.initial_rf, 0.0, AccessHistory(ev.file_id)}).first;
      }
      it->second.cumulative += static_cast<double>(ev.count);
      touched[ev.file_id] = true;
    }

    for (const auto& [ext, _] : touched) {
      const auto& f = tracked.at(ext);
      const auto r = schedule_and_run(cluster, JobSpec::data_heavy(cfg.file_size_bytes, f.file));
      epoch.sim.completion_seconds += r.completion_seconds;
      epoch.sim.tasks_total += r.tasks_total;
      for (std::size_t i = 0; i < 3; ++i) epoch.sim.locality_histogram[i] += r.locality_histogram[i];
    }

    for (auto& [ext, f] : tracked) {
      f.history.append({end, f.cumulative});
      if (f.history.size() < 2) continue;
      const auto predicted = predict_next(f.history, cfg.window);
      const double future = std::max(0.0, predicted.count_next - f.cumulative);
      auto decision = decide_rf(future, f.rf, rcfg);
      decision.file_id = ext;
      const auto applied = apply_decision(cluster.topo(), cluster.replicas, cluster.blocks_of(f.file), decision,
                                          cluster.config.cost, rng, cluster.config.placement());
      f.rf = decision.rf_new;
      epoch.sim.ingest_update_cost_seconds += applied.update_cost_seconds;
      out.log.push_back({e, decision, applied.update_cost_seconds});
    }
    out.epochs.push_back(std::move(epoch));
  }
  return out;
}

}  // namespace hdfsim
