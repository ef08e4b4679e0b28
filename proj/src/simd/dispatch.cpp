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

#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace thintail::simd {
namespace {

constexpr Kernels kScalar = {"scalar", &scalar::enclosed_area, &scalar::power_density,
                             &scalar::gaussian_kernel_sum, &scalar::power_transform};

#ifdef THINTAIL_BUILD_AVX2
constexpr Kernels kAvx2 = {"avx2", &avx2::enclosed_area, &avx2::power_density,
                           &avx2::gaussian_kernel_sum, &avx2::power_transform};
#endif

const Kernels& select() noexcept {
  if (const char* forced = std::getenv("THINTAIL_SIMD")) {
    if (std::string_view(forced) == "scalar") return kScalar;
  }
  if (const Kernels* k = avx2_kernels()) return *k;
  return kScalar;
}

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

const Kernels* avx2_kernels() noexcept {
#ifdef THINTAIL_BUILD_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active_kernels() noexcept {
  static const Kernels& chosen = select();
  return chosen;
}

}  // namespace thintail::simd
