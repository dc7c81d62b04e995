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

// Access-count prediction: the next access time is extrapolated from the mean
// inter-sample interval, and the cumulative count at that time from the
// Lagrange polynomial through the most recent samples.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdfsim/error.hpp"

namespace hdfsim {

template <std::floating_point T>
struct InterpolationPoint {
  T x;
  T f;
};

/// Value at `x` of the unique degree-n polynomial through the n+1 points,
/// summed as f_i times the product of (x - x_j) / (x_i - x_j) over j != i.
template <std::floating_point T>
T lagrange_eval(std::span<const InterpolationPoint<T>> points, T x) {
  if (points.empty()) throw Error(Errc::EmptyPointSet, "interpolation needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].x == points[j].x) {
        throw Error(Errc::DuplicateAbscissa, "duplicate abscissa " + std::to_string(points[i].x));
      }
    }
  }
  T sum = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    T numerator = 1;
    T denominator = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      numerator *= x - points[j].x;
      denominator *= points[i].x - points[j].x;
    }
    sum += points[i].f * (numerator / denominator);
  }
  return sum;
}

template <std::floating_point T>
T lagrange_eval(const std::vector<InterpolationPoint<T>>& points, T x) {
  return lagrange_eval(std::span<const InterpolationPoint<T>>(points), x);
}

struct AccessSample {
  double t = 0.0;      // seconds
  double count = 0.0;  // cumulative accesses observed by t

  bool operator==(const AccessSample&) const = default;
};

/// Time-ordered samples for one file. append() enforces strictly increasing
/// times and non-decreasing counts.
class AccessHistory {
 public:
  AccessHistory() = default;
  explicit AccessHistory(std::uint64_t file_id) : file_id_(file_id) {}
  AccessHistory(std::uint64_t file_id, std::vector<AccessSample> samples) : file_id_(file_id) {
    for (const auto& s : samples) append(s);
  }

  void append(AccessSample s) {
    if (!samples_.empty()) {
      if (s.t <= samples_.back().t) {
        throw Error(Errc::DuplicateAbscissa, "sample times must be strictly increasing (t=" + std::to_string(s.t) + ")");
      }
      if (s.count < samples_.back().count) {
        throw Error(Errc::InvalidArgument, "cumulative count decreased at t=" + std::to_string(s.t));
      }
    }
    if (s.count < 0) throw Error(Errc::InvalidArgument, "negative access count");
    samples_.push_back(s);
  }

  std::uint64_t file_id() const { return file_id_; }
  const std::vector<AccessSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

 private:
  std::uint64_t file_id_ = 0;
  std::vector<AccessSample> samples_;
};

struct PredictedAccess {
  double t_next = 0.0;
  double count_next = 0.0;  // predicted cumulative count at t_next, floored at 0
  std::size_t window_used = 0;
};

inline constexpr std::size_t kDefaultPredictionWindow = 4;

inline double average_interval(const AccessHistory& history) {
  const auto& s = history.samples();
  if (s.size() < 2) throw Error(Errc::InsufficientHistory, "insufficient history: need at least 2 samples");
  return (s.back().t - s.front().t) / static_cast<double>(s.size() - 1);
}

/// Predicts the next access from the trailing `window` samples. Times are
/// shifted so the window starts at t=0 before interpolating.
inline PredictedAccess predict_next(const AccessHistory& history, std::size_t window = kDefaultPredictionWindow) {
  const auto& s = history.samples();
  if (s.size() < 2) throw Error(Errc::InsufficientHistory, "insufficient history: need at least 2 samples");
  if (window < 2) throw Error(Errc::InvalidArgument, "prediction window must be at least 2");

  PredictedAccess out;
  out.t_next = s.back().t + average_interval(history);
  out.window_used = std::min(window, s.size());

  const auto first = s.size() - out.window_used;
  const double origin = s[first].t;
  std::vector<InterpolationPoint<double>> points;
  points.reserve(out.window_used);
  for (std::size_t i = first; i < s.size(); ++i) points.push_back({s[i].t - origin, s[i].count});
  out.count_next = std::max(0.0, lagrange_eval(points, out.t_next - origin));
  return out;
}

}  // namespace hdfsim
