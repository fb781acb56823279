// Copyright 2026 The cvhbt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only reference computations, independent of the library paths they
// check.

#include <cmath>
#include <functional>

namespace cvhbt::oracles {

/// Tensor trapezoidal rule on [-half_width, half_width]^2. Spectrally
/// accurate for smooth integrands that decay to zero at the box edge.
inline double trapezoid_2d(const std::function<double(double, double)>& f, double half_width,
                           int points_per_axis) {
  const double h = 2.0 * half_width / (points_per_axis - 1);
  double sum = 0.0;
  for (int i = 0; i < points_per_axis; ++i) {
    const double x = -half_width + i * h;
    const double wx = (i == 0 || i + 1 == points_per_axis) ? 0.5 : 1.0;
    for (int j = 0; j < points_per_axis; ++j) {
      const double y = -half_width + j * h;
      const double wy = (j == 0 || j + 1 == points_per_axis) ? 0.5 : 1.0;
      sum += wx * wy * f(x, y);
    }
  }
  return sum * h * h;
}

/// Smallest N with ratio^(N+1) <= tol, by linear search.
inline int brute_force_cutoff(double nbar, double tol) {
  const double ratio = nbar / (1.0 + nbar);
  int n = 0;
  while (std::pow(ratio, n + 1) > tol) ++n;
  return n;
}

}  // namespace cvhbt::oracles
