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

#include "hdfsim/adaptive.hpp"
#include "hdfsim/error.hpp"
#include "hdfsim/placement.hpp"
#include "hdfsim/prediction.hpp"
#include "hdfsim/random.hpp"
#include "hdfsim/replication.hpp"
#include "hdfsim/sim.hpp"
#include "hdfsim/sweep.hpp"
#include "hdfsim/topology.hpp"

namespace hdfsim {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace hdfsim
