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

// Trace CSV readers.
//   access history: header `t_seconds,count`, cumulative count per sample
//   access events:  header `t_seconds,file_id` or `t_seconds,file_id,count`

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hdfsim/adaptive.hpp"
#include "hdfsim/error.hpp"
#include "hdfsim/io/config.hpp"
#include "hdfsim/prediction.hpp"

namespace hdfsim::io {

namespace detail {

struct CsvLine {
  std::size_t number;
  std::vector<std::string_view> cells;
};

inline std::vector<CsvLine> split_csv(std::string_view text) {
  std::vector<CsvLine> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    CsvLine row{line_no, {}};
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    out.push_back(std::move(row));
  }
  return out;
}

[[noreturn]] inline void bad_row(std::size_t line, const std::string& why) {
  throw Error(Errc::MalformedLine, "line " + std::to_string(line) + ": " + why, line);
}

}  // namespace detail

inline AccessHistory parse_access_history(std::string_view text, std::uint64_t file_id = 0) {
  const auto rows = detail::split_csv(text);
  if (rows.empty() || rows.front().cells != std::vector<std::string_view>{"t_seconds", "count"}) {
    detail::bad_row(rows.empty() ? 1 : rows.front().number, "expected header 't_seconds,count'");
  }
  AccessHistory history(file_id);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.cells.size() != 2) detail::bad_row(row.number, "expected 2 columns");
    const auto t = detail::parse_number<double>(row.cells[0]);
    const auto c = detail::parse_number<double>(row.cells[1]);
    if (!t || !c) detail::bad_row(row.number, "non-numeric cell");
    try {
      history.append({*t, *c});
    } catch (const Error& e) {
      detail::bad_row(row.number, e.what());
    }
  }
  return history;
}

inline std::vector<AccessEvent> parse_access_events(std::string_view text) {
  const auto rows = detail::split_csv(text);
  const std::vector<std::string_view> two{"t_seconds", "file_id"};
  const std::vector<std::string_view> three{"t_seconds", "file_id", "count"};
  if (rows.empty() || (rows.front().cells != two && rows.front().cells != three)) {
    detail::bad_row(rows.empty() ? 1 : rows.front().number, "expected header 't_seconds,file_id[,count]'");
  }
  const auto columns = rows.front().cells.size();
  std::vector<AccessEvent> events;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.cells.size() != columns) detail::bad_row(row.number, "expected " + std::to_string(columns) + " columns");
    AccessEvent ev;
    const auto t = detail::parse_number<double>(row.cells[0]);
    const auto f = detail::parse_number<std::uint64_t>(row.cells[1]);
    if (!t || !f || !(*t >= 0)) detail::bad_row(row.number, "bad time or file id");
    ev.t = *t;
    ev.file_id = *f;
    if (columns == 3) {
      const auto c = detail::parse_number<std::uint64_t>(row.cells[2]);
      if (!c || *c == 0) detail::bad_row(row.number, "count must be a positive integer");
      ev.count = *c;
    }
    if (!events.empty() && ev.t < events.back().t) detail::bad_row(row.number, "times must be non-decreasing");
    events.push_back(ev);
  }
  return events;
}

}  // namespace hdfsim::io
