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

#ifndef THINTAIL_RANDOM_HPP_
#define THINTAIL_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace thintail {

// Philox4x32-10 counter-based block function (Salmon et al., Random123).
// Stateless: the output depends only on (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key) noexcept;
};

// A reproducible random stream identified by (seed, stream_id).
//
// Streams with distinct ids are statistically independent, so work item t
// can draw from RandomStream(seed, t) regardless of which thread runs it.
// Satisfies UniformRandomBitGenerator with 64-bit output.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  // Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int next_ = 2;
};

// Standard normal variate (Box-Muller, no cached pair).
double standard_normal(RandomStream& stream);

// ln G for G ~ Gamma(shape, 1). Working in log space keeps very small shapes
// (e.g. 1/100) free of underflow. Marsaglia-Tsang squeeze/rejection for
// shape >= 1; shape < 1 uses G(shape) = G(shape + 1) * U^(1/shape).
double log_gamma_variate(double shape, RandomStream& stream);

// G ~ Gamma(shape, 1).
double gamma_variate(double shape, RandomStream& stream);

}  // namespace thintail

#endif  // THINTAIL_RANDOM_HPP_
