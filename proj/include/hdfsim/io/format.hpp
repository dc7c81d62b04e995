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

#include <charconv>
#include <cmath>
#include <string>

#include "hdfsim/error.hpp"

namespace hdfsim::io {

/// Shortest decimal text that round-trips to `v` ("30", "0.25", "1e-09").
inline std::string format_number(double v) {
  if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "refusing to format a non-finite number");
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace hdfsim::io
