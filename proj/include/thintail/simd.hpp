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

#ifndef THINTAIL_SIMD_HPP_
#define THINTAIL_SIMD_HPP_

// Data-parallel inner loops, each with a scalar reference implementation and
// (on x86-64) an AVX2/FMA variant. The variant is picked once at runtime from
// CPUID; set THINTAIL_SIMD=scalar in the environment to force the reference.

#include <cstddef>
#include <span>

namespace thintail::simd {

struct Kernels {
  const char* name;

  // Area between the diagonal Y = X and the polyline through (x[i], y[i]),
  // segments split where they cross the diagonal. x.size() == y.size() >= 2.
  double (*enclosed_area)(std::span<const double> x, std::span<const double> y);

  // out[i] = scale * exp(-0.5 * (x[i] * inv_s)^power), power >= 1.
  void (*power_density)(std::span<const double> x, double inv_s, int power, double scale,
                        std::span<double> out);

  // out[j] = sum_i exp(-0.5 * ((grid[j] - data[i]) / bandwidth)^2) * scale.
  void (*gaussian_kernel_sum)(std::span<const double> grid, std::span<const double> data,
                              double bandwidth, double scale, std::span<double> out);

  // out[i] = scale * exp((log_g[i] + ln 2) * inv_power), i.e. scale * (2 g)^(1/n).
  void (*power_transform)(std::span<const double> log_g, double inv_power, double scale,
                          std::span<double> out);
};

const Kernels& scalar_kernels() noexcept;

// nullptr when the build lacks the AVX2 variant or the CPU lacks AVX2+FMA.
const Kernels* avx2_kernels() noexcept;

// Kernels selected for this process.
const Kernels& active_kernels() noexcept;

// x^power by binary exponentiation; shared by every variant so the power
// step is bit-identical across them.
inline double int_pow(double x, int power) noexcept {
  double result = 1.0;
  double base = x;
  unsigned e = static_cast<unsigned>(power);
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

}  // namespace thintail::simd

#endif  // THINTAIL_SIMD_HPP_
