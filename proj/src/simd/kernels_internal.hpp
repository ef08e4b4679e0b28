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

#ifndef THINTAIL_SRC_SIMD_KERNELS_INTERNAL_HPP_
#define THINTAIL_SRC_SIMD_KERNELS_INTERNAL_HPP_

#include "thintail/simd.hpp"

namespace thintail::simd {

#define THINTAIL_DECLARE_KERNELS                                                              \
  double enclosed_area(std::span<const double> x, std::span<const double> y);                \
  void power_density(std::span<const double> x, double inv_s, int power, double scale,       \
                     std::span<double> out);                                                  \
  void gaussian_kernel_sum(std::span<const double> grid, std::span<const double> data,       \
                           double bandwidth, double scale, std::span<double> out);           \
  void power_transform(std::span<const double> log_g, double inv_power, double scale,        \
                       std::span<double> out);

namespace scalar {
THINTAIL_DECLARE_KERNELS
}

#ifdef THINTAIL_BUILD_AVX2
namespace avx2 {
THINTAIL_DECLARE_KERNELS
}
#endif

#undef THINTAIL_DECLARE_KERNELS

}  // namespace thintail::simd

#endif  // THINTAIL_SRC_SIMD_KERNELS_INTERNAL_HPP_
