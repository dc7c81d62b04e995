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

// Replication sweep: for each replication factor, run independent seeded
// simulations and aggregate completion time, locality and ingest cost.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <thread>
#include <vector>

#include "hdfsim/error.hpp"
#include "hdfsim/random.hpp"
#include "hdfsim/sim.hpp"
#include "hdfsim/topology.hpp"

namespace hdfsim {

struct SweepOptions {
  std::size_t rf_min = 1;
  std::size_t rf_max = 1;
  // Add the ingest cost to each data-heavy run's completion time.
  bool include_ingest_cost = true;
  // 0 = hardware concurrency. Output does not depend on this.
  unsigned threads = 0;
};

struct SweepRow {
  std::size_t rf = 0;
  double mean_completion_s = 0.0;
  double stddev_s = 0.0;
  double node_local_frac = 0.0;
  double rack_local_frac = 0.0;
  double off_rack_frac = 0.0;
  double mean_update_cost_s = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  bool operator==(const SweepResult&) const = default;
};

/// One replication of one sweep point: fresh cluster, ingest from a uniformly
/// drawn writer, then schedule_and_run(). completion_seconds is the makespan
/// only; the ingest cost is reported separately.
inline SimResult run_once(std::shared_ptr<const ClusterTopology> topo, const SimConfig& cfg, const JobSpec& job,
                          std::size_t rf, std::uint64_t seed) {
  auto cluster = build_cluster(std::move(topo), cfg);
  Rng rng(seed);
  const auto& writer = rng.pick(std::span<const std::string>(cluster.compute_nodes));
  if (const auto* d = std::get_if<DataHeavyJob>(&job.kind)) {
    const auto ingest = ingest_file(cluster, d->file_size_bytes, writer, rf, rng);
    auto result = schedule_and_run(cluster, JobSpec::data_heavy(d->file_size_bytes, ingest.file));
    result.ingest_update_cost_seconds = ingest.cost_seconds;
    return result;
  }
  const auto& c = std::get<ComputeHeavyJob>(job.kind);
  const auto splits = ingest_splits(cluster, c.num_tasks, writer, rf, rng);
  return schedule_and_run(cluster, JobSpec::compute_heavy(c.num_tasks, c.task_seconds, splits.file));
}

namespace detail {

inline SweepRow aggregate(std::size_t rf, std::span<const SimResult> runs, bool data_heavy, bool include_ingest) {
  SweepRow row;
  row.rf = rf;
  std::vector<double> times;
  std::array<std::uint64_t, 3> hist{};
  std::uint64_t tasks = 0;
  double cost = 0.0;
  for (const auto& r : runs) {
    double t = r.completion_seconds;
    if (data_heavy && include_ingest) t += r.ingest_update_cost_seconds;
    times.push_back(t);
    for (std::size_t i = 0; i < 3; ++i) hist[i] += r.locality_histogram[i];
    tasks += r.tasks_total;
    cost += r.ingest_update_cost_seconds;
  }
  const auto n = static_cast<double>(times.size());
  row.mean_completion_s = std::accumulate(times.begin(), times.end(), 0.0) / n;
  if (times.size() > 1) {
    double ss = 0.0;
    for (double t : times) ss += (t - row.mean_completion_s) * (t - row.mean_completion_s);
    row.stddev_s = std::sqrt(ss / (n - 1.0));
  }
  if (tasks > 0) {
    const auto total = static_cast<double>(tasks);
    row.node_local_frac = static_cast<double>(hist[0]) / total;
    row.rack_local_frac = static_cast<double>(hist[1]) / total;
    row.off_rack_frac = static_cast<double>(hist[2]) / total;
  }
  row.mean_update_cost_s = cost / n;
  return row;
}

}  // namespace detail

/// Runs cfg.runs_per_point replications per rf in [rf_min, rf_max]. Run
/// `i` of point `rf` is seeded with derive_seed(cfg.seed, rf, i). Runs are
/// spread over worker threads and merged by (rf, run index).
inline SweepResult run_sweep(std::shared_ptr<const ClusterTopology> topo, const SimConfig& cfg,
                             const JobSpec& job_template, const SweepOptions& opts) {
  cfg.validate();
  job_template.validate();
  if (opts.rf_min < 1 || opts.rf_min > opts.rf_max) {
    throw Error(Errc::InvalidArgument, "rf range must satisfy 1 <= rf_min <= rf_max");
  }
  const auto eligible = eligible_nodes(*topo, cfg.placement()).size();
  if (eligible == 0) throw Error(Errc::NoEligibleNodes, "topology has no eligible compute nodes");
  if (opts.rf_max > eligible) {
    throw Error(Errc::ReplicationFactorTooLarge, "rf_max=" + std::to_string(opts.rf_max) + " exceeds the " +
                                                     std::to_string(eligible) + " eligible nodes");
  }

  const std::size_t points = opts.rf_max - opts.rf_min + 1;
  const std::size_t runs = cfg.runs_per_point;
  std::vector<SimResult> results(points * runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t k = next++; k < results.size(); k = next++) {
      const std::size_t rf = opts.rf_min + k / runs;
      const std::size_t run = k % runs;
      try {
        results[k] = run_once(topo, cfg, job_template, rf, derive_seed(cfg.seed, rf, run));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, results.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  for (std::size_t p = 0; p < points; ++p) {
    out.rows.push_back(detail::aggregate(opts.rf_min + p, std::span<const SimResult>(results).subspan(p * runs, runs),
                                         job_template.is_data_heavy(), opts.include_ingest_cost));
  }
  return out;
}

/// Spearman rank correlation with average ranks for ties. NaN when either
/// input is constant.
inline double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(Errc::InvalidArgument, "spearman needs two equal-length series");
  auto ranks = [](std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace hdfsim
