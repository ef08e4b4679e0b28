// Copyright 2026 The thintail Authors
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

#include <cmath>
#include <numbers>

#include "kernels_internal.hpp"

namespace thintail::simd::scalar {

double enclosed_area(std::span<const double> x, std::span<const double> y) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double dx = x[i + 1] - x[i];
    const double d0 = y[i] - x[i];
    const double d1 = y[i + 1] - x[i + 1];
    if ((d0 >= 0.0 && d1 >= 0.0) || (d0 <= 0.0 && d1 <= 0.0)) {
      total += 0.5 * dx * (std::abs(d0) + std::abs(d1));
    } else {
      // Two triangles meeting where the segment crosses the diagonal.
      const double t = d0 / (d0 - d1);
      total += 0.5 * dx * (t * std::abs(d0) + (1.0 - t) * std::abs(d1));
    }
  }
  return total;
}

void power_density(std::span<const double> x, double inv_s, int power, double scale,
                   std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = scale * std::exp(-0.5 * int_pow(x[i] * inv_s, power));
  }
}

void gaussian_kernel_sum(std::span<const double> grid, std::span<const double> data,
                         double bandwidth, double scale, std::span<double> out) {
  const double inv_h = 1.0 / bandwidth;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double acc = 0.0;
    for (double d : data) {
      const double z = (grid[j] - d) * inv_h;
      acc += std::exp(-0.5 * z * z);
    }
    out[j] = scale * acc;
  }
}

void power_transform(std::span<const double> log_g, double inv_power, double scale,
                     std::span<double> out) {
  for (std::size_t i = 0; i < log_g.size(); ++i) {
    out[i] = scale * std::exp((log_g[i] + std::numbers::ln2) * inv_power);
  }
}

}  // namespace thintail::simd::scalar
