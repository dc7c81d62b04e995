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

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace hdfsim {

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for run `run_index` of sweep point `rf`. Both indices are mixed
/// before being XOR-folded into the base seed, so (rf, run) pairs never alias.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t rf,
                                    std::uint64_t run_index) noexcept {
  return base ^ splitmix64(rf) ^ splitmix64(~run_index);
}

/// Seeded random source. The standard distributions are implementation
/// defined, so bounded draws and shuffles are done here to keep results
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection from the largest multiple of bound.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % bound;
  }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[static_cast<std::size_t>(below(i))]);
    }
  }

  /// k distinct elements drawn uniformly without replacement, in draw order.
  template <class T>
  std::vector<T> sample(std::span<const T> pool, std::size_t k) {
    std::vector<T> scratch(pool.begin(), pool.end());
    if (k > scratch.size()) k = scratch.size();
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(below(scratch.size() - i));
      std::swap(scratch[i], scratch[j]);
    }
    scratch.resize(k);
    return scratch;
  }

  template <class T>
  const T& pick(std::span<const T> pool) {
    return pool[static_cast<std::size_t>(below(pool.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hdfsim
