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

// Turning predicted access counts into replication factors, and pricing the
// block copies needed to enact them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdfsim/error.hpp"
#include "hdfsim/placement.hpp"
#include "hdfsim/random.hpp"
#include "hdfsim/topology.hpp"

namespace hdfsim {

/// Network figures. In-rack links are faster and lower latency than the
/// links between racks.
struct CostModel {
  double bw_in_rack = 100e6;  // bytes/sec
  double bw_cross_rack = 12.5e6;
  double latency_in_rack = 0.001;  // sec per transfer
  double latency_cross_rack = 0.005;

  void validate() const {
    if (!(bw_cross_rack > 0) || !(bw_in_rack >= bw_cross_rack)) {
      throw Error(Errc::InvalidArgument, "cost model requires bw_in_rack >= bw_cross_rack > 0");
    }
    if (latency_in_rack < 0 || latency_cross_rack < 0) {
      throw Error(Errc::InvalidArgument, "cost model latencies must be non-negative");
    }
  }

  bool operator==(const CostModel&) const = default;
};

/// Time to move `bytes` across a link of the given locality; 0 for NodeLocal.
inline double transfer_seconds(std::uint64_t bytes, LocalityLevel level, const CostModel& cost) {
  switch (level) {
    case LocalityLevel::NodeLocal: return 0.0;
    case LocalityLevel::RackLocal: return static_cast<double>(bytes) / cost.bw_in_rack + cost.latency_in_rack;
    case LocalityLevel::OffRack: return static_cast<double>(bytes) / cost.bw_cross_rack + cost.latency_cross_rack;
  }
  return 0.0;
}

/// Serial sum of the transfer times in `plan`.
inline double update_cost(std::span<const Transfer> plan, const ClusterTopology& topo, const CostModel& cost) {
  double total = 0.0;
  for (const auto& t : plan) {
    if (t.src == t.dst) {
      throw Error(Errc::SelfTransfer, "transfer of block " + std::to_string(t.block) + " from '" + t.src + "' to itself");
    }
    total += transfer_seconds(t.bytes, locality(topo, t.src, t.dst), cost);
  }
  return total;
}

struct ReplicationConfig {
  std::size_t min_rf = 1;
  std::optional<std::size_t> max_rf;  // unset: number of eligible nodes
  double accesses_per_replica = 2.0;
  std::size_t hysteresis = 1;

  ReplicationConfig resolved(std::size_t eligible_nodes) const {
    ReplicationConfig out = *this;
    if (!out.max_rf) out.max_rf = eligible_nodes;
    return out;
  }

  void validate() const {
    if (min_rf < 1) throw Error(Errc::InvalidArgument, "min_rf must be at least 1");
    if (max_rf && *max_rf < min_rf) throw Error(Errc::InvalidArgument, "min_rf must not exceed max_rf");
    if (!(accesses_per_replica > 0)) throw Error(Errc::InvalidArgument, "accesses_per_replica must be positive");
  }
};

enum class DecisionReason { ScaleUp, ScaleDown, Hold };

constexpr std::string_view to_string(DecisionReason r) {
  switch (r) {
    case DecisionReason::ScaleUp: return "ScaleUp";
    case DecisionReason::ScaleDown: return "ScaleDown";
    case DecisionReason::Hold: return "Hold";
  }
  return "";
}

struct ReplicationDecision {
  std::uint64_t file_id = 0;
  std::size_t rf_old = 0;
  std::size_t rf_new = 0;
  double predicted_count = 0.0;
  DecisionReason reason = DecisionReason::Hold;

  bool operator==(const ReplicationDecision&) const = default;
};

/// target = clamp(ceil(predicted / accesses_per_replica), min_rf, max_rf);
/// the factor only moves when target is more than `hysteresis` away.
inline ReplicationDecision decide_rf(double predicted_count, std::size_t rf_current, const ReplicationConfig& cfg) {
  cfg.validate();
  if (!cfg.max_rf) throw Error(Errc::InvalidArgument, "max_rf must be resolved before deciding");
  if (!(predicted_count >= 0)) throw Error(Errc::InvalidArgument, "predicted count must be non-negative");
  if (rf_current < cfg.min_rf || rf_current > *cfg.max_rf) {
    throw Error(Errc::InvalidArgument, "current replication factor " + std::to_string(rf_current) +
                                           " outside [min_rf, max_rf]");
  }
  // Round-off from interpolation must not push an exact ratio over an integer.
  const double ratio = predicted_count / cfg.accesses_per_replica;
  const double wanted = std::ceil(ratio - 1e-9 * std::max(1.0, ratio));
  const auto lo = static_cast<double>(cfg.min_rf);
  const auto hi = static_cast<double>(*cfg.max_rf);
  const auto target = static_cast<std::size_t>(std::clamp(wanted, lo, hi));

  ReplicationDecision d;
  d.rf_old = rf_current;
  d.predicted_count = predicted_count;
  const std::size_t gap = target > rf_current ? target - rf_current : rf_current - target;
  d.rf_new = gap > cfg.hysteresis ? target : rf_current;
  d.reason = d.rf_new > rf_current   ? DecisionReason::ScaleUp
             : d.rf_new < rf_current ? DecisionReason::ScaleDown
                                     : DecisionReason::Hold;
  return d;
}

struct AppliedDecision {
  double update_cost_seconds = 0.0;
  std::vector<Transfer> plan;
};

/// Brings every block of a file from rf_old to rf_new replicas. Scale-up copies
/// are priced with update_cost(); deletions are free.
inline AppliedDecision apply_decision(const ClusterTopology& topo, ReplicaMap& replicas, std::span<const Block> blocks,
                                      const ReplicationDecision& decision, const CostModel& cost, Rng& rng,
                                      PlacementOptions opts = {}) {
  for (const auto& b : blocks) {
    if (replicas.hosts(b.id).size() != decision.rf_old) {
      throw Error(Errc::InvalidArgument, "block " + std::to_string(b.id) + " has " +
                                             std::to_string(replicas.hosts(b.id).size()) + " replicas, decision expects " +
                                             std::to_string(decision.rf_old));
    }
  }
  AppliedDecision out;
  if (decision.rf_new > decision.rf_old) {
    for (const auto& b : blocks) {
      auto added = add_replicas(topo, replicas, b, decision.rf_new - decision.rf_old, rng, opts);
      out.plan.insert(out.plan.end(), added.plan.begin(), added.plan.end());
    }
    out.update_cost_seconds = update_cost(out.plan, topo, cost);
  } else if (decision.rf_new < decision.rf_old) {
    for (const auto& b : blocks) remove_replicas(topo, replicas, b.id, decision.rf_old - decision.rf_new);
  }
  return out;
}

}  // namespace hdfsim
