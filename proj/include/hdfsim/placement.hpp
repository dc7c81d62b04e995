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

// Default block placement: first replica on the writer, the next two on a
// single remote rack, any further replicas uniformly on the remaining nodes.
// Also the add/remove actions used when a file's replication factor changes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdfsim/error.hpp"
#include "hdfsim/random.hpp"
#include "hdfsim/topology.hpp"

namespace hdfsim {

using BlockId = std::uint64_t;
using FileId = std::uint64_t;
using HostList = std::vector<std::string>;

struct Block {
  BlockId id = 0;
  FileId file = 0;
  std::uint64_t size_bytes = 0;
  std::uint32_t index_in_file = 0;

  bool operator==(const Block&) const = default;
};

/// One block copy moved from `src` to `dst`.
struct Transfer {
  BlockId block = 0;
  std::uint64_t bytes = 0;
  std::string src;
  std::string dst;

  bool operator==(const Transfer&) const = default;
};

struct PlacementOptions {
  // Masters run the NameNode/JobTracker and hold no blocks.
  bool exclude_master = true;
};

/// Nodes that may store blocks and run tasks, in topology order.
inline std::vector<std::string> eligible_nodes(const ClusterTopology& topo, PlacementOptions opts = {}) {
  std::vector<std::string> out;
  for (const auto& e : topo.entries()) {
    if (opts.exclude_master && e.node.role == NodeRole::master) continue;
    out.push_back(e.node.host);
  }
  return out;
}

class ReplicaMap {
 public:
  bool contains(BlockId block) const { return placements_.contains(block); }

  const HostList& hosts(BlockId block) const {
    const auto it = placements_.find(block);
    if (it == placements_.end()) {
      throw Error(Errc::UnknownBlock, "no replicas recorded for block " + std::to_string(block));
    }
    return it->second;
  }

  void set(BlockId block, HostList hosts) { placements_[block] = std::move(hosts); }

  std::size_t size() const { return placements_.size(); }

  std::size_t total_replicas() const {
    std::size_t n = 0;
    for (const auto& [_, hosts] : placements_) n += hosts.size();
    return n;
  }

  const std::map<BlockId, HostList>& placements() const { return placements_; }

  bool operator==(const ReplicaMap&) const = default;

 private:
  std::map<BlockId, HostList> placements_;
};

namespace detail {

struct RackGroup {
  RackPath rack;
  std::vector<std::string> hosts;
};

inline std::vector<RackGroup> group_by_rack(const ClusterTopology& topo, std::span<const std::string> hosts) {
  std::vector<RackGroup> groups;
  for (const auto& h : hosts) {
    auto rack = resolve_rack(topo, h);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const RackGroup& g) { return g.rack == rack; });
    if (it == groups.end()) {
      groups.push_back({std::move(rack), {h}});
    } else {
      it->hosts.push_back(h);
    }
  }
  return groups;
}

inline bool holds(std::span<const std::string> hosts, std::string_view h) {
  return std::find(hosts.begin(), hosts.end(), h) != hosts.end();
}

inline std::vector<std::string> without(std::span<const std::string> pool, std::span<const std::string> taken) {
  std::vector<std::string> out;
  for (const auto& h : pool) {
    if (!holds(taken, h)) out.push_back(h);
  }
  return out;
}

}  // namespace detail

/// Chooses `rf` distinct hosts for a new block written from `writer`.
///
/// result[0] is the writer. With rf >= 2 the second (and third) replica go to
/// one rack other than the writer's, picked uniformly among racks with enough
/// eligible nodes. When every remote rack has a single node, replicas two and
/// three land on two different remote racks. A single-rack cluster degrades to
/// distinct nodes anywhere. The result depends only on the arguments and the
/// state of `rng`.
inline HostList place_block(const ClusterTopology& topo, std::string_view writer, std::size_t rf, Rng& rng,
                            PlacementOptions opts = {}) {
  const auto eligible = eligible_nodes(topo, opts);
  if (!detail::holds(eligible, writer)) {
    throw Error(Errc::WriterNotInCluster, "writer '" + std::string(writer) + "' is not an eligible node");
  }
  if (rf < 1) throw Error(Errc::InvalidArgument, "replication factor must be at least 1");
  if (rf > eligible.size()) {
    throw Error(Errc::ReplicationFactorTooLarge, "replication factor " + std::to_string(rf) + " exceeds " +
                                                     std::to_string(eligible.size()) + " eligible nodes");
  }

  HostList result{std::string(writer)};
  if (rf >= 2) {
    const auto writer_rack = resolve_rack(topo, writer);
    std::vector<detail::RackGroup> remote;
    for (auto& g : detail::group_by_rack(topo, eligible)) {
      if (g.rack != writer_rack) remote.push_back(std::move(g));
    }
    const std::size_t want = std::min<std::size_t>(rf - 1, 2);
    std::vector<const detail::RackGroup*> roomy;
    for (const auto& g : remote) {
      if (g.hosts.size() >= want) roomy.push_back(&g);
    }
    if (!roomy.empty()) {
      const auto* g = rng.pick(std::span<const detail::RackGroup* const>(roomy));
      for (auto& h : rng.sample(std::span<const std::string>(g->hosts), want)) result.push_back(std::move(h));
    } else if (!remote.empty()) {
      // Only single-node remote racks: spread replicas two and three.
      auto order = rng.sample(std::span<const detail::RackGroup>(remote), std::min<std::size_t>(want, remote.size()));
      for (const auto& g : order) result.push_back(g.hosts.front());
    }
  }
  if (result.size() < rf) {
    const auto rest = detail::without(eligible, result);
    for (auto& h : rng.sample(std::span<const std::string>(rest), rf - result.size())) result.push_back(std::move(h));
  }
  return result;
}

enum class PlacementViolation {
  WrongReplicaCount,
  DuplicateHost,
  UnknownHost,
  RemoteReplicaOnWriterRack,
  RemoteRackSplit,
};

constexpr std::string_view to_string(PlacementViolation v) {
  switch (v) {
    case PlacementViolation::WrongReplicaCount: return "WrongReplicaCount";
    case PlacementViolation::DuplicateHost: return "DuplicateHost";
    case PlacementViolation::UnknownHost: return "UnknownHost";
    case PlacementViolation::RemoteReplicaOnWriterRack: return "RemoteReplicaOnWriterRack";
    case PlacementViolation::RemoteRackSplit: return "RemoteRackSplit";
  }
  return "";
}

/// Names every clause of the place_block() contract that `hosts` breaks;
/// empty when the placement conforms. hosts[0] is taken as the writer.
inline std::vector<PlacementViolation> validate_placement(const ClusterTopology& topo,
                                                          std::span<const std::string> hosts,
                                                          std::size_t rf_expected, PlacementOptions opts = {}) {
  std::vector<PlacementViolation> report;
  auto flag = [&](PlacementViolation v) {
    if (std::find(report.begin(), report.end(), v) == report.end()) report.push_back(v);
  };

  if (hosts.size() != rf_expected) flag(PlacementViolation::WrongReplicaCount);
  std::set<std::string_view> seen;
  for (const auto& h : hosts) {
    if (!seen.insert(h).second) flag(PlacementViolation::DuplicateHost);
  }
  const auto eligible = eligible_nodes(topo, opts);
  for (const auto& h : hosts) {
    if (!detail::holds(eligible, h)) flag(PlacementViolation::UnknownHost);
  }
  if (hosts.size() < 2) return report;

  const auto writer_rack = resolve_rack(topo, hosts[0]);
  std::size_t remote_racks = 0;
  bool roomy_remote = false;
  for (const auto& g : detail::group_by_rack(topo, eligible)) {
    if (g.rack == writer_rack) continue;
    ++remote_racks;
    roomy_remote = roomy_remote || g.hosts.size() >= 2;
  }
  if (remote_racks == 0) return report;  // single rack: rack clauses waived

  const auto second_rack = resolve_rack(topo, hosts[1]);
  if (second_rack == writer_rack) flag(PlacementViolation::RemoteReplicaOnWriterRack);
  if (hosts.size() < 3) return report;

  const auto third_rack = resolve_rack(topo, hosts[2]);
  if (roomy_remote) {
    if (third_rack == writer_rack) {
      flag(PlacementViolation::RemoteReplicaOnWriterRack);
    } else if (third_rack != second_rack) {
      flag(PlacementViolation::RemoteRackSplit);
    }
  } else if (remote_racks >= 2 && third_rack == writer_rack) {
    flag(PlacementViolation::RemoteReplicaOnWriterRack);
  }
  return report;
}

struct ReplicaAddition {
  HostList hosts;               // full replica list after the addition
  std::vector<Transfer> plan;   // one transfer per new replica
};

/// Adds `k` replicas of `block` on nodes drawn uniformly from those not yet
/// holding it. Each new copy is sourced from the locality-nearest replica that
/// existed before the call (first in replica order on ties).
inline ReplicaAddition add_replicas(const ClusterTopology& topo, ReplicaMap& replicas, const Block& block,
                                    std::size_t k, Rng& rng, PlacementOptions opts = {}) {
  if (k < 1) throw Error(Errc::InvalidArgument, "must add at least one replica");
  const HostList existing = replicas.hosts(block.id);
  const auto free = detail::without(eligible_nodes(topo, opts), existing);
  if (k > free.size()) {
    throw Error(Errc::ReplicationFactorTooLarge,
                "cannot add " + std::to_string(k) + " replicas to block " + std::to_string(block.id) + ": only " +
                    std::to_string(free.size()) + " nodes without a copy");
  }

  ReplicaAddition out{existing, {}};
  for (auto& dst : rng.sample(std::span<const std::string>(free), k)) {
    const std::string* src = &existing.front();
    for (const auto& candidate : existing) {
      if (distance(locality(topo, candidate, dst)) < distance(locality(topo, *src, dst))) src = &candidate;
    }
    out.plan.push_back({block.id, block.size_bytes, *src, dst});
    out.hosts.push_back(std::move(dst));
  }
  replicas.set(block.id, out.hosts);
  return out;
}

/// Drops `k` replicas, each time removing the non-writer copy whose loss keeps
/// the most distinct racks among survivors (lowest host name on ties).
inline HostList remove_replicas(const ClusterTopology& topo, ReplicaMap& replicas, BlockId block, std::size_t k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "must remove at least one replica");
  HostList hosts = replicas.hosts(block);
  if (k >= hosts.size()) {
    throw Error(Errc::CannotRemoveLastReplica, "removing " + std::to_string(k) + " of " +
                                                   std::to_string(hosts.size()) + " replicas of block " +
                                                   std::to_string(block) + " would leave none");
  }

  auto rack_diversity = [&](std::size_t skip) {
    std::set<RackPath> racks;
    for (std::size_t i = 0; i < hosts.size(); ++i) {
      if (i != skip) racks.insert(resolve_rack(topo, hosts[i]));
    }
    return racks.size();
  };

  for (std::size_t round = 0; round < k; ++round) {
    // k < hosts.size() guarantees a non-writer candidate every round.
    std::size_t victim = 1;
    std::size_t best = rack_diversity(1);
    for (std::size_t i = 2; i < hosts.size(); ++i) {
      const auto d = rack_diversity(i);
      if (d > best || (d == best && hosts[i] < hosts[victim])) {
        victim = i;
        best = d;
      }
    }
    hosts.erase(hosts.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  replicas.set(block, hosts);
  return hosts;
}

}  // namespace hdfsim
