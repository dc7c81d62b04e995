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

// Result writers: sweep CSV, decision log, SVG chart, JSON manifest and
// JSON-lines replica dumps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdfsim/adaptive.hpp"
#include "hdfsim/io/format.hpp"
#include "hdfsim/sim.hpp"
#include "hdfsim/sweep.hpp"

namespace hdfsim::io {

inline constexpr std::string_view kResultsHeader =
    "rf,mean_completion_s,stddev_s,node_local_frac,rack_local_frac,off_rack_frac,mean_update_cost_s";
inline constexpr std::string_view kDecisionLogHeader =
    "epoch,file_id,rf_old,rf_new,predicted_count,reason,update_cost_s";

inline std::string results_csv(const SweepResult& sweep) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const auto& r : sweep.rows) {
    out += std::to_string(r.rf);
    for (double v : {r.mean_completion_s, r.stddev_s, r.node_local_frac, r.rack_local_frac, r.off_rack_frac,
                     r.mean_update_cost_s}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

inline std::string decision_log_csv(const std::vector<DecisionRecord>& log) {
  std::string out(kDecisionLogHeader);
  out += '\n';
  for (const auto& rec : log) {
    const auto& d = rec.decision;
    out += std::to_string(rec.epoch) + ',' + std::to_string(d.file_id) + ',' + std::to_string(d.rf_old) + ',' +
           std::to_string(d.rf_new) + ',' + format_number(d.predicted_count) + ',' + std::string(to_string(d.reason)) +
           ',' + format_number(rec.update_cost_s) + '\n';
  }
  return out;
}

inline std::string epochs_csv(const std::vector<EpochResult>& epochs) {
  std::string out = "epoch,completion_s,node_local,rack_local,off_rack,tasks,ingest_update_cost_s\n";
  for (const auto& e : epochs) {
    out += std::to_string(e.epoch) + ',' + format_number(e.sim.completion_seconds) + ',' +
           std::to_string(e.sim.locality_histogram[0]) + ',' + std::to_string(e.sim.locality_histogram[1]) + ',' +
           std::to_string(e.sim.locality_histogram[2]) + ',' + std::to_string(e.sim.tasks_total) + ',' +
           format_number(e.sim.ingest_update_cost_seconds) + '\n';
  }
  return out;
}

inline nlohmann::ordered_json to_json(const SimResult& r) {
  return {{"completion_seconds", r.completion_seconds},
          {"locality_histogram",
           {{"NodeLocal", r.locality_histogram[0]}, {"RackLocal", r.locality_histogram[1]}, {"OffRack", r.locality_histogram[2]}}},
          {"ingest_update_cost_seconds", r.ingest_update_cost_seconds},
          {"tasks_total", r.tasks_total}};
}

/// One JSON object per block: {"block_id", "file_id", "hosts"}.
inline std::string replicas_jsonl(const ClusterState& cluster) {
  std::string out;
  for (const auto& [file, blocks] : cluster.files) {
    for (const auto& b : blocks) {
      nlohmann::ordered_json line = {{"block_id", b.id}, {"file_id", file}, {"hosts", cluster.replicas.hosts(b.id)}};
      out += line.dump();
      out += '\n';
    }
  }
  return out;
}

struct RunManifest {
  std::string tool_version;
  std::string command;
  std::string config_path;
  std::string topology_path;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
  std::map<std::string, std::string> notes;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "hdfsim";
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["config_path"] = config_path;
    j["topology_path"] = topology_path;
    j["seed"] = seed;
    j["parameters"] = parameters;
    j["notes"] = notes;
    return j;
  }
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

/// Static line chart of mean completion time against replication factor.
inline std::string results_svg(const SweepResult& sweep, std::string_view title, const RunManifest* manifest = nullptr) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double y_max = 0.0;
  for (const auto& r : sweep.rows) y_max = std::max(y_max, r.mean_completion_s);
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.1;
  const double x_min = sweep.rows.empty() ? 1.0 : static_cast<double>(sweep.rows.front().rf);
  const double x_max = sweep.rows.empty() ? 2.0 : static_cast<double>(sweep.rows.back().rf);
  const double x_span = x_max > x_min ? x_max - x_min : 1.0;
  auto px = [&](double rf) { return left + (rf - x_min) / x_span * plot_w; };
  auto py = [&](double t) { return top + plot_h - t / y_max * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  if (manifest) svg += "<metadata>" + detail::xml_escape(manifest->to_json().dump()) + "</metadata>\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         detail::xml_escape(title) + "</text>\n";
  // axes
  svg += "<line x1=\"" + detail::fixed(left) + "\" y1=\"" + detail::fixed(top + plot_h) + "\" x2=\"" +
         detail::fixed(left + plot_w) + "\" y2=\"" + detail::fixed(top + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + detail::fixed(left) + "\" y1=\"" + detail::fixed(top) + "\" x2=\"" + detail::fixed(left) +
         "\" y2=\"" + detail::fixed(top + plot_h) + "\" stroke=\"black\"/>\n";
  for (const auto& r : sweep.rows) {
    const double x = px(static_cast<double>(r.rf));
    svg += "<text x=\"" + detail::fixed(x) + "\" y=\"" + detail::fixed(top + plot_h + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + std::to_string(r.rf) + "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double t = y_max * i / 4.0;
    svg += "<text x=\"" + detail::fixed(left - 6) + "\" y=\"" + detail::fixed(py(t) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + detail::fixed(t, 1) + "</text>\n";
  }
  svg += "<text x=\"320\" y=\"390\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">replication factor</text>\n";
  svg += "<text x=\"16\" y=\"200\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 200)\">mean completion (s)</text>\n";

  std::string points;
  for (const auto& r : sweep.rows) {
    if (!points.empty()) points += ' ';
    points += detail::fixed(px(static_cast<double>(r.rf))) + "," + detail::fixed(py(r.mean_completion_s));
  }
  svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
  for (const auto& r : sweep.rows) {
    svg += "<circle cx=\"" + detail::fixed(px(static_cast<double>(r.rf))) + "\" cy=\"" +
           detail::fixed(py(r.mean_completion_s)) + "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hdfsim::io
