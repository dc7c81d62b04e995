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

// Map-phase simulation: cluster state, file ingest, and a greedy
// earliest-free-slot scheduler that prefers the best data locality.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "hdfsim/error.hpp"
#include "hdfsim/placement.hpp"
#include "hdfsim/random.hpp"
#include "hdfsim/replication.hpp"
#include "hdfsim/topology.hpp"

namespace hdfsim {

inline constexpr std::uint64_t kDefaultBlockSize = 64ULL << 20;

struct SimConfig {
  std::uint64_t block_size_bytes = kDefaultBlockSize;
  std::size_t map_slots_per_node = 2;
  double compute_rate = 50e6;  // bytes/sec per map task
  double fixed_task_compute_seconds = 10.0;  // default duration of a compute-heavy task
  CostModel cost;
  std::uint64_t seed = 0;
  std::size_t runs_per_point = 8;
  bool exclude_master = true;

  PlacementOptions placement() const { return {exclude_master}; }

  void validate() const {
    if (block_size_bytes == 0) throw Error(Errc::InvalidArgument, "block_size_bytes must be positive");
    if (map_slots_per_node == 0) throw Error(Errc::InvalidArgument, "map_slots_per_node must be positive");
    if (!(compute_rate > 0)) throw Error(Errc::InvalidArgument, "compute_rate must be positive");
    if (!(fixed_task_compute_seconds > 0)) throw Error(Errc::InvalidArgument, "fixed_task_compute_seconds must be positive");
    if (runs_per_point == 0) throw Error(Errc::InvalidArgument, "runs_per_point must be positive");
    cost.validate();
  }
};

struct ClusterState {
  std::shared_ptr<const ClusterTopology> topology;
  SimConfig config;
  std::vector<std::string> compute_nodes;  // topology order
  ReplicaMap replicas;
  std::map<FileId, std::vector<Block>> files;
  BlockId next_block = 0;
  FileId next_file = 0;

  const ClusterTopology& topo() const { return *topology; }

  const std::vector<Block>& blocks_of(FileId file) const {
    const auto it = files.find(file);
    if (it == files.end()) throw Error(Errc::FileNotIngested, "file " + std::to_string(file) + " has not been ingested");
    return it->second;
  }
};

inline ClusterState build_cluster(std::shared_ptr<const ClusterTopology> topo, const SimConfig& cfg) {
  cfg.validate();
  ClusterState state;
  state.compute_nodes = eligible_nodes(*topo, cfg.placement());
  if (state.compute_nodes.empty()) throw Error(Errc::NoEligibleNodes, "topology has no eligible compute nodes");
  state.topology = std::move(topo);
  state.config = cfg;
  return state;
}

inline ClusterState build_cluster(const ClusterTopology& topo, const SimConfig& cfg) {
  return build_cluster(std::make_shared<const ClusterTopology>(topo), cfg);
}

struct IngestResult {
  FileId file = 0;
  std::vector<Block> blocks;
  double cost_seconds = 0.0;
};

namespace detail {

inline IngestResult ingest_blocks(ClusterState& cluster, const std::vector<std::uint64_t>& sizes, std::string_view writer,
                                  std::size_t rf, Rng& rng, bool priced) {
  IngestResult out;
  out.file = cluster.next_file;
  std::vector<Transfer> plan;
  std::vector<std::pair<Block, HostList>> placed;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Block b{cluster.next_block + i, out.file, sizes[i], static_cast<std::uint32_t>(i)};
    auto hosts = place_block(cluster.topo(), writer, rf, rng, cluster.config.placement());
    for (std::size_t r = 1; r < hosts.size(); ++r) plan.push_back({b.id, b.size_bytes, hosts[0], hosts[r]});
    placed.emplace_back(b, std::move(hosts));
  }
  // Commit only once every block has been placed.
  for (auto& [b, hosts] : placed) {
    cluster.replicas.set(b.id, std::move(hosts));
    out.blocks.push_back(b);
  }
  cluster.next_block += sizes.size();
  cluster.next_file += 1;
  cluster.files.emplace(out.file, out.blocks);
  if (priced) out.cost_seconds = update_cost(plan, cluster.topo(), cluster.config.cost);
  return out;
}

}  // namespace detail

/// Splits a file into ceil(size / block_size) blocks, places each with
/// place_block(), and prices the writer-to-replica copies.
inline IngestResult ingest_file(ClusterState& cluster, std::uint64_t file_size_bytes, std::string_view writer,
                                std::size_t rf, Rng& rng) {
  if (file_size_bytes == 0) throw Error(Errc::InvalidArgument, "file size must be at least 1 byte");
  const auto bs = cluster.config.block_size_bytes;
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t off = 0; off < file_size_bytes; off += bs) sizes.push_back(std::min(bs, file_size_bytes - off));
  return detail::ingest_blocks(cluster, sizes, writer, rf, rng, true);
}

/// Input splits of a compute-heavy job: one nominal 1-byte block per task.
/// They carry no data, so the ingest is free.
inline IngestResult ingest_splits(ClusterState& cluster, std::size_t num_tasks, std::string_view writer, std::size_t rf,
                                  Rng& rng) {
  if (num_tasks == 0) throw Error(Errc::InvalidArgument, "compute-heavy job needs at least one task");
  return detail::ingest_blocks(cluster, std::vector<std::uint64_t>(num_tasks, 1), writer, rf, rng, false);
}

/// One map task per block of an ingested file.
struct DataHeavyJob {
  std::uint64_t file_size_bytes = 0;
  std::optional<FileId> file;
};

/// Data-free tasks of fixed duration. When `splits` names an ingested split
/// file, task i may only run on a node holding a replica of split block i;
/// otherwise any slot will do.
struct ComputeHeavyJob {
  std::size_t num_tasks = 0;
  double task_seconds = 0.0;
  std::optional<FileId> splits;
};

struct JobSpec {
  std::variant<DataHeavyJob, ComputeHeavyJob> kind;

  static JobSpec data_heavy(std::uint64_t file_size_bytes, std::optional<FileId> file = std::nullopt) {
    return {DataHeavyJob{file_size_bytes, file}};
  }
  static JobSpec compute_heavy(std::size_t num_tasks, double task_seconds, std::optional<FileId> splits = std::nullopt) {
    return {ComputeHeavyJob{num_tasks, task_seconds, splits}};
  }

  bool is_data_heavy() const { return std::holds_alternative<DataHeavyJob>(kind); }

  void validate() const {
    if (const auto* d = std::get_if<DataHeavyJob>(&kind)) {
      if (d->file_size_bytes == 0) throw Error(Errc::InvalidArgument, "data-heavy job needs file_size_bytes >= 1");
    } else {
      const auto& c = std::get<ComputeHeavyJob>(kind);
      if (c.num_tasks == 0) throw Error(Errc::InvalidArgument, "compute-heavy job needs num_tasks >= 1");
      if (!(c.task_seconds > 0)) throw Error(Errc::InvalidArgument, "compute-heavy job needs task_seconds > 0");
    }
  }
};

struct SimResult {
  double completion_seconds = 0.0;  // map-phase makespan
  std::array<std::uint64_t, 3> locality_histogram{};  // indexed by LocalityLevel
  double ingest_update_cost_seconds = 0.0;
  std::uint64_t tasks_total = 0;

  std::uint64_t count(LocalityLevel level) const { return locality_histogram[static_cast<std::size_t>(level)]; }

  bool operator==(const SimResult&) const = default;
};

/// Record of one scheduled task, kept for inspection in tests.
struct TaskAssignment {
  std::size_t task = 0;
  std::string host;
  std::size_t slot = 0;
  double start = 0.0;
  double finish = 0.0;
  LocalityLevel level = LocalityLevel::NodeLocal;
};

namespace detail {

struct SlotState {
  std::size_t node = 0;  // index into compute_nodes
  std::size_t slot = 0;
  double free_at = 0.0;
  bool retired = false;
};

struct PendingTask {
  std::size_t index = 0;
  const Block* block = nullptr;  // input block, or split block for pinned compute tasks
  double fixed_seconds = 0.0;
};

}  // namespace detail

/// Greedy list scheduling. Repeatedly, among the slots that become free
/// earliest, the pairing of slot and unscheduled task with the best locality
/// is committed; ties go to the lowest task index, then host name, then slot
/// number. Slots that can never run a remaining task are retired.
inline SimResult schedule_and_run(const ClusterState& cluster, const JobSpec& job,
                                  std::vector<TaskAssignment>* trace = nullptr) {
  job.validate();
  const auto& topo = cluster.topo();
  const auto& cfg = cluster.config;

  bool data_heavy = false;
  bool pinned = false;
  std::vector<detail::PendingTask> pending;
  if (const auto* d = std::get_if<DataHeavyJob>(&job.kind)) {
    if (!d->file || !cluster.files.contains(*d->file)) {
      throw Error(Errc::FileNotIngested, "data-heavy job's file has not been ingested");
    }
    data_heavy = true;
    const auto& blocks = cluster.blocks_of(*d->file);
    for (std::size_t i = 0; i < blocks.size(); ++i) pending.push_back({i, &blocks[i], 0.0});
  } else {
    const auto& c = std::get<ComputeHeavyJob>(job.kind);
    const std::vector<Block>* splits = nullptr;
    if (c.splits) {
      splits = &cluster.blocks_of(*c.splits);
      if (splits->size() != c.num_tasks) {
        throw Error(Errc::InvalidArgument, "split file has " + std::to_string(splits->size()) + " blocks for " +
                                               std::to_string(c.num_tasks) + " tasks");
      }
      pinned = true;
    }
    for (std::size_t i = 0; i < c.num_tasks; ++i) pending.push_back({i, splits ? &(*splits)[i] : nullptr, c.task_seconds});
  }

  // Slots in host-name order so that ties resolve by host, then slot.
  std::vector<std::size_t> node_order(cluster.compute_nodes.size());
  for (std::size_t i = 0; i < node_order.size(); ++i) node_order[i] = i;
  std::sort(node_order.begin(), node_order.end(),
            [&](std::size_t a, std::size_t b) { return cluster.compute_nodes[a] < cluster.compute_nodes[b]; });
  std::vector<detail::SlotState> slots;
  for (auto n : node_order) {
    for (std::size_t s = 0; s < cfg.map_slots_per_node; ++s) slots.push_back({n, s, 0.0, false});
  }

  // Best locality of `task` on `node`; nullopt when the task may not run there.
  struct Fit {
    LocalityLevel level;
  };
  auto fit = [&](const detail::PendingTask& task, const std::string& node) -> std::optional<Fit> {
    if (!data_heavy) {
      if (!pinned) return Fit{LocalityLevel::NodeLocal};
      const auto& holders = cluster.replicas.hosts(task.block->id);
      if (detail::holds(holders, node)) return Fit{LocalityLevel::NodeLocal};
      return std::nullopt;
    }
    const auto& holders = cluster.replicas.hosts(task.block->id);
    Fit best{LocalityLevel::OffRack};
    for (const auto& h : holders) {
      const auto level = locality(topo, node, h);
      if (distance(level) < distance(best.level)) best.level = level;
    }
    return best;
  };

  SimResult result;
  result.tasks_total = pending.size();
  while (!pending.empty()) {
    double now = std::numeric_limits<double>::infinity();
    for (const auto& s : slots) {
      if (!s.retired) now = std::min(now, s.free_at);
    }
    if (now == std::numeric_limits<double>::infinity()) {
      throw Error(Errc::InvalidArgument, std::to_string(pending.size()) + " tasks cannot run on any compute node");
    }

    struct Candidate {
      std::size_t slot;
      std::size_t pending_pos;
      Fit fit;
    };
    std::optional<Candidate> chosen;
    for (std::size_t si = 0; si < slots.size(); ++si) {
      auto& s = slots[si];
      if (s.retired || s.free_at != now) continue;
      const auto& node = cluster.compute_nodes[s.node];
      std::optional<Candidate> local_best;
      for (std::size_t p = 0; p < pending.size(); ++p) {
        const auto f = fit(pending[p], node);
        if (!f) continue;
        if (!local_best || distance(f->level) < distance(local_best->fit.level)) local_best = Candidate{si, p, *f};
        if (f->level == LocalityLevel::NodeLocal) break;
      }
      if (!local_best) {
        s.retired = true;
        continue;
      }
      // Slots are visited in (host, slot) order, so strict comparisons keep
      // the earlier slot on full ties.
      if (!chosen) {
        chosen = local_best;
      } else {
        const auto key = [&](const Candidate& c) {
          return std::make_tuple(distance(c.fit.level), pending[c.pending_pos].index);
        };
        if (key(*local_best) < key(*chosen)) chosen = local_best;
      }
    }
    if (!chosen) continue;  // every slot free at `now` was retired

    auto& slot = slots[chosen->slot];
    const auto& task = pending[chosen->pending_pos];
    double duration = task.fixed_seconds;
    if (data_heavy) {
      duration = static_cast<double>(task.block->size_bytes) / cfg.compute_rate +
                 transfer_seconds(task.block->size_bytes, chosen->fit.level, cfg.cost);
    }
    const double start = slot.free_at;
    slot.free_at = start + duration;
    result.locality_histogram[static_cast<std::size_t>(chosen->fit.level)] += 1;
    result.completion_seconds = std::max(result.completion_seconds, slot.free_at);
    if (trace) {
      trace->push_back({task.index, cluster.compute_nodes[slot.node], slot.slot, start, slot.free_at, chosen->fit.level});
    }
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(chosen->pending_pos));
  }
  return result;
}

}  // namespace hdfsim
