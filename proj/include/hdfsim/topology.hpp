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

// Rack-aware cluster topology: the two-column `topology.data` format and the
// rack-mapping script contract (one rack path per argument, each followed by
// a single space, unknown hosts mapped to /default/rack).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hdfsim/error.hpp"

namespace hdfsim {

namespace detail {

inline bool is_field_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_field_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_field_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

enum class NodeRole { unspecified, master, slave };

constexpr std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::master: return "master";
    case NodeRole::slave: return "slave";
    case NodeRole::unspecified: break;
  }
  return "";
}

struct NodeName {
  std::string host;
  NodeRole role = NodeRole::unspecified;

  /// Parses a host token with an optional "(master)" / "(slave)" prefix.
  static NodeName parse(std::string_view token) {
    NodeName name;
    if (!token.empty() && token.front() == '(') {
      const auto close = token.find(')');
      if (close == std::string_view::npos) {
        throw Error(Errc::MalformedLine, "unterminated role prefix in '" + std::string(token) + "'");
      }
      const auto role = token.substr(1, close - 1);
      if (role == "master") {
        name.role = NodeRole::master;
      } else if (role == "slave") {
        name.role = NodeRole::slave;
      } else {
        throw Error(Errc::MalformedLine, "unknown role '" + std::string(role) + "'");
      }
      token.remove_prefix(close + 1);
    }
    if (token.empty()) throw Error(Errc::MalformedLine, "empty host name");
    for (char c : token) {
      if (detail::is_field_space(c) || c == '\n') {
        throw Error(Errc::MalformedLine, "host name contains whitespace");
      }
    }
    name.host = std::string(token);
    return name;
  }

  /// Inverse of parse().
  std::string token() const {
    if (role == NodeRole::unspecified) return host;
    return "(" + std::string(to_string(role)) + ")" + host;
  }

  bool operator==(const NodeName&) const = default;
};

/// Hierarchical rack identifier such as /dc1/rack1. Equality is whole-path.
class RackPath {
 public:
  RackPath() = default;

  static RackPath parse(std::string_view text) {
    if (text.empty() || text.front() != '/') {
      throw Error(Errc::InvalidRackPath, "rack path must start with '/': '" + std::string(text) + "'");
    }
    RackPath path;
    std::string_view rest = text.substr(1);
    while (true) {
      const auto slash = rest.find('/');
      const auto segment = rest.substr(0, slash);
      if (segment.empty()) {
        throw Error(Errc::InvalidRackPath, "empty segment in rack path '" + std::string(text) + "'");
      }
      path.components_.emplace_back(segment);
      if (slash == std::string_view::npos) break;
      rest.remove_prefix(slash + 1);
    }
    return path;
  }

  static const RackPath& default_rack() {
    static const RackPath fallback = parse("/default/rack");
    return fallback;
  }

  const std::vector<std::string>& components() const { return components_; }

  std::string str() const {
    std::string out;
    for (const auto& c : components_) {
      out += '/';
      out += c;
    }
    return out;
  }

  auto operator<=>(const RackPath&) const = default;
  bool operator==(const RackPath&) const = default;

 private:
  std::vector<std::string> components_;
};

enum class LocalityLevel { NodeLocal = 0, RackLocal = 1, OffRack = 2 };

constexpr int distance(LocalityLevel level) { return static_cast<int>(level); }

constexpr std::string_view to_string(LocalityLevel level) {
  switch (level) {
    case LocalityLevel::NodeLocal: return "NodeLocal";
    case LocalityLevel::RackLocal: return "RackLocal";
    case LocalityLevel::OffRack: return "OffRack";
  }
  return "";
}

struct TopologyEntry {
  NodeName node;
  RackPath rack;

  bool operator==(const TopologyEntry&) const = default;
};

/// Node -> rack map. Iteration follows insertion (file) order. Immutable once
/// built, so a single instance can be shared by concurrent runs.
class ClusterTopology {
 public:
  void add(NodeName node, RackPath rack) {
    if (index_.contains(node.host)) {
      throw Error(Errc::DuplicateNode, "duplicate node '" + node.host + "'");
    }
    index_.emplace(node.host, entries_.size());
    entries_.push_back({std::move(node), std::move(rack)});
  }

  const std::vector<TopologyEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(std::string_view host) const { return index_.contains(std::string(host)); }

  const TopologyEntry* find(std::string_view host) const {
    const auto it = index_.find(std::string(host));
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  /// Distinct racks in order of first appearance.
  std::vector<RackPath> racks() const {
    std::vector<RackPath> out;
    for (const auto& e : entries_) {
      if (std::find(out.begin(), out.end(), e.rack) == out.end()) out.push_back(e.rack);
    }
    return out;
  }

  std::vector<std::string> hosts_in_rack(const RackPath& rack) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
      if (e.rack == rack) out.push_back(e.node.host);
    }
    return out;
  }

  /// Two-column text form accepted by parse_topology().
  std::string serialize() const {
    std::string out;
    for (const auto& e : entries_) {
      out += e.node.token();
      out += '\t';
      out += e.rack.str();
      out += '\n';
    }
    return out;
  }

  bool operator==(const ClusterTopology& other) const { return entries_ == other.entries_; }

 private:
  std::vector<TopologyEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Parses `topology.data`. Blank lines and '#' comments are skipped; tabs and
/// runs of spaces both separate fields. Errors carry the 1-based line number.
inline ClusterTopology parse_topology(std::string_view text) {
  ClusterTopology topo;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    if (pos == text.size()) break;
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    const auto fields = detail::split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    const auto prefix = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != 2) {
      throw Error(Errc::MalformedLine,
                  prefix + "expected 2 fields, found " + std::to_string(fields.size()), line_no);
    }
    try {
      topo.add(NodeName::parse(fields[0]), RackPath::parse(fields[1]));
    } catch (const Error& e) {
      throw Error(e.code(), prefix + e.what(), line_no);
    }
  }
  return topo;
}

/// Rack of `host`, or /default/rack when the host is not mapped.
inline RackPath resolve_rack(const ClusterTopology& topo, std::string_view host) {
  if (const auto* entry = topo.find(host)) return entry->rack;
  return RackPath::default_rack();
}

/// Byte-exact stdout of the rack-mapping script: "<rack> " per argument, no newline.
inline std::string emit_mapping_output(const ClusterTopology& topo, std::span<const std::string> hosts) {
  std::string out;
  for (const auto& h : hosts) {
    out += resolve_rack(topo, h).str();
    out += ' ';
  }
  return out;
}

inline LocalityLevel locality(const ClusterTopology& topo, std::string_view a, std::string_view b) {
  if (a == b) return LocalityLevel::NodeLocal;
  if (resolve_rack(topo, a) == resolve_rack(topo, b)) return LocalityLevel::RackLocal;
  return LocalityLevel::OffRack;
}

}  // namespace hdfsim
