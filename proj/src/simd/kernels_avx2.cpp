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

// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include <cmath>
#include <numbers>

#include "kernels_internal.hpp"

namespace thintail::simd::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// exp(x) for four doubles: Cody-Waite range reduction x = k ln2 + r with a
// Cephes Pade form for e^r, |r| <= ln2 / 2. Results below DBL_MIN flush to 0.
inline __m256d exp_pd(__m256d x) {
  const __m256d kMaxArg = _mm256_set1_pd(709.782712893383973096);
  const __m256d kMinArg = _mm256_set1_pd(-708.396418532264106224);
  const __m256d kLog2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d kLn2Hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d kLn2Lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d kP0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d kP1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d kP2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d kQ0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d kQ1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d kQ2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d kQ3 = _mm256_set1_pd(2.00000000000000000009e0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);

  const __m256d underflow = _mm256_cmp_pd(x, kMinArg, _CMP_LT_OQ);
  const __m256d overflow = _mm256_cmp_pd(x, kMaxArg, _CMP_GT_OQ);
  x = _mm256_max_pd(_mm256_min_pd(x, kMaxArg), kMinArg);

  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, kLog2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, kLn2Hi, x);
  r = _mm256_fnmadd_pd(k, kLn2Lo, r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d px = _mm256_fmadd_pd(kP0, rr, kP1);
  px = _mm256_fmadd_pd(px, rr, kP2);
  px = _mm256_mul_pd(px, r);
  __m256d qx = _mm256_fmadd_pd(kQ0, rr, kQ1);
  qx = _mm256_fmadd_pd(qx, rr, kQ2);
  qx = _mm256_fmadd_pd(qx, rr, kQ3);
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(two, e, one);

  // 2^k split as 2^(k/2) * 2^(k - k/2) so k = 1024 stays representable.
  const __m128i k32 = _mm256_cvtpd_epi32(k);
  const __m128i half = _mm_srai_epi32(k32, 1);
  const __m128i rest = _mm_sub_epi32(k32, half);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256d scale_a = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(half), bias), 52));
  const __m256d scale_b = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(rest), bias), 52));
  e = _mm256_mul_pd(_mm256_mul_pd(e, scale_a), scale_b);

  e = _mm256_blendv_pd(e, _mm256_setzero_pd(), underflow);
  e = _mm256_blendv_pd(e, _mm256_set1_pd(HUGE_VAL), overflow);
  return e;
}

inline __m256d int_pow_pd(__m256d x, int power) {
  __m256d result = _mm256_set1_pd(1.0);
  __m256d base = x;
  unsigned e = static_cast<unsigned>(power);
  while (e != 0) {
    if (e & 1u) result = _mm256_mul_pd(result, base);
    e >>= 1;
    if (e != 0) base = _mm256_mul_pd(base, base);
  }
  return result;
}

}  // namespace

double enclosed_area(std::span<const double> x, std::span<const double> y) {
  const std::size_t segments = x.size() < 2 ? 0 : x.size() - 1;
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + kLanes <= segments; i += kLanes) {
    const __m256d x0 = _mm256_loadu_pd(x.data() + i);
    const __m256d x1 = _mm256_loadu_pd(x.data() + i + 1);
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(y.data() + i), x0);
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(y.data() + i + 1), x1);
    const __m256d dx = _mm256_sub_pd(x1, x0);
    const __m256d a0 = _mm256_andnot_pd(sign_mask, d0);
    const __m256d a1 = _mm256_andnot_pd(sign_mask, d1);
    const __m256d same_sign = _mm256_cmp_pd(_mm256_mul_pd(d0, d1), zero, _CMP_GE_OQ);
    // Same sign: trapezoid (|d0| + |d1|) / 2.
    const __m256d trapezoid = _mm256_add_pd(a0, a1);
    // Opposite sign: triangles, (d0^2 + d1^2) / (|d0| + |d1|) / 2.
    const __m256d squares = _mm256_fmadd_pd(d0, d0, _mm256_mul_pd(d1, d1));
    const __m256d denom = _mm256_blendv_pd(trapezoid, _mm256_set1_pd(1.0), same_sign);
    const __m256d triangles = _mm256_div_pd(squares, denom);
    const __m256d height = _mm256_blendv_pd(triangles, trapezoid, same_sign);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(half, dx), height, acc);
  }
  double total = horizontal_sum(acc);
  if (i < segments) total += scalar::enclosed_area(x.subspan(i), y.subspan(i));
  return total;
}

void power_density(std::span<const double> x, double inv_s, int power, double scale,
                   std::span<double> out) {
  const __m256d vinv = _mm256_set1_pd(inv_s);
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d neg_half = _mm256_set1_pd(-0.5);
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    const __m256d u = int_pow_pd(_mm256_mul_pd(_mm256_loadu_pd(x.data() + i), vinv), power);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(vscale, exp_pd(_mm256_mul_pd(neg_half, u))));
  }
  if (i < x.size()) scalar::power_density(x.subspan(i), inv_s, power, scale, out.subspan(i));
}

void gaussian_kernel_sum(std::span<const double> grid, std::span<const double> data,
                         double bandwidth, double scale, std::span<double> out) {
  const __m256d inv_h = _mm256_set1_pd(1.0 / bandwidth);
  const __m256d neg_half = _mm256_set1_pd(-0.5);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t j = 0;
  for (; j + kLanes <= grid.size(); j += kLanes) {
    const __m256d g = _mm256_loadu_pd(grid.data() + j);
    __m256d acc = _mm256_setzero_pd();
    for (double d : data) {
      const __m256d z = _mm256_mul_pd(_mm256_sub_pd(g, _mm256_set1_pd(d)), inv_h);
      acc = _mm256_add_pd(acc, exp_pd(_mm256_mul_pd(neg_half, _mm256_mul_pd(z, z))));
    }
    _mm256_storeu_pd(out.data() + j, _mm256_mul_pd(vscale, acc));
  }
  if (j < grid.size()) {
    scalar::gaussian_kernel_sum(grid.subspan(j), data, bandwidth, scale, out.subspan(j));
  }
}

void power_transform(std::span<const double> log_g, double inv_power, double scale,
                     std::span<double> out) {
  const __m256d ln2 = _mm256_set1_pd(std::numbers::ln2);
  const __m256d vinv = _mm256_set1_pd(inv_power);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + kLanes <= log_g.size(); i += kLanes) {
    const __m256d arg = _mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(log_g.data() + i), ln2), vinv);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(vscale, exp_pd(arg)));
  }
  if (i < log_g.size()) scalar::power_transform(log_g.subspan(i), inv_power, scale, out.subspan(i));
}

}  // namespace thintail::simd::avx2
