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

// Independent reference computations used only by tests. Nothing here calls
// into the code under test.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hdfsim::oracle {

/// Solves the Vandermonde system for the monomial coefficients of the
/// interpolating polynomial (Gaussian elimination, partial pivoting) and
/// evaluates it at `x` with Horner's rule.
inline double vandermonde_eval(const std::vector<std::pair<double, double>>& points, double x) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    double p = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      a[r][c] = p;
      p *= points[r].first;
    }
    a[r][n] = points[r].second;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) throw std::runtime_error("singular Vandermonde system");
    std::swap(a[pivot], a[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= m * a[col][c];
    }
  }
  std::vector<double> coef(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = a[i][n];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * coef[c];
    coef[i] = s / a[i][i];
  }
  double v = 0.0;
  for (std::size_t i = n; i-- > 0;) v = v * x + coef[i];
  return v;
}

/// Newton forward-difference extrapolation for equally spaced samples:
/// value at step `s` (in units of the spacing) of the polynomial through f.
inline double forward_difference_eval(std::vector<double> f, double s) {
  double result = 0.0;
  double binom = 1.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    result += binom * f[0];
    binom *= (s - static_cast<double>(k)) / static_cast<double>(k + 1);
    for (std::size_t i = 0; i + 1 < f.size() - k; ++i) f[i] = f[i + 1] - f[i];
  }
  return result;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

}  // namespace hdfsim::oracle
