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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hdfsim {

enum class Errc {
  // topology
  MalformedLine,
  InvalidRackPath,
  DuplicateNode,
  // placement
  ReplicationFactorTooLarge,
  WriterNotInCluster,
  CannotRemoveLastReplica,
  UnknownBlock,
  // prediction
  DuplicateAbscissa,
  EmptyPointSet,
  InsufficientHistory,
  // replication
  SelfTransfer,
  // sim
  NoEligibleNodes,
  FileNotIngested,
  // shared
  InvalidArgument,
  Config,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::InvalidRackPath: return "InvalidRackPath";
    case Errc::DuplicateNode: return "DuplicateNode";
    case Errc::ReplicationFactorTooLarge: return "ReplicationFactorTooLarge";
    case Errc::WriterNotInCluster: return "WriterNotInCluster";
    case Errc::CannotRemoveLastReplica: return "CannotRemoveLastReplica";
    case Errc::UnknownBlock: return "UnknownBlock";
    case Errc::DuplicateAbscissa: return "DuplicateAbscissa";
    case Errc::EmptyPointSet: return "EmptyPointSet";
    case Errc::InsufficientHistory: return "InsufficientHistory";
    case Errc::SelfTransfer: return "SelfTransfer";
    case Errc::NoEligibleNodes: return "NoEligibleNodes";
    case Errc::FileNotIngested: return "FileNotIngested";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Config: return "Config";
  }
  return "Unknown";
}

/// Every failure raised by the library. `line()` is set for errors that
/// come out of a line-oriented parser (1-based).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(what), code_(code), line_(line) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace hdfsim
