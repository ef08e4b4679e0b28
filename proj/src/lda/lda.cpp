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

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "thintail/error.hpp"
#include "thintail/lda.hpp"

namespace thintail::lda {
namespace {

using thintail::detail::require;

// A single year cannot plausibly need more events than this.
constexpr std::int64_t kMaxEventsPerTrial = 100'000'000;

void simulate_range(const SeverityModel& severity, const FrequencyModel& freq,
                    std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                    std::span<double> sums) {
  std::vector<double> draws;
  for (std::uint64_t t = begin; t < end; ++t) {
    RandomStream stream(seed, t);
    const std::int64_t z = draw_count(freq, stream);
    if (z > kMaxEventsPerTrial) throw std::overflow_error("LDA: event count out of range");
    draws.resize(static_cast<std::size_t>(z));
    severity.sample(stream, draws);
    double sum = 0.0;
    for (double v : draws) sum += v;
    if (!std::isfinite(sum)) throw std::overflow_error("LDA: annual loss overflowed");
    sums[t] = sum;
  }
}

}  // namespace

void LdaConfig::validate() const {
  require(trials >= kMinTrials, "LdaConfig: trials must be >= 1000");
  require(percentile > 0.0 && percentile < 1.0, "LdaConfig: percentile must lie in (0, 1)");
  require(batches >= 2, "LdaConfig: need at least two batches");
  require(trials >= static_cast<std::uint64_t>(batches) * 10,
          "LdaConfig: too few trials per batch");
}

double empirical_percentile(std::span<const double> values, double p) {
  require(!values.empty(), "empirical_percentile: no values");
  require(p >= 0.0 && p <= 1.0, "empirical_percentile: p must lie in [0, 1]");
  std::vector<double> v(values.begin(), values.end());
  const double h = static_cast<double>(v.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
  const double x_lo = v[lo];
  if (lo + 1 >= v.size() || frac == 0.0) return x_lo;
  const double x_hi = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
  return x_lo + frac * (x_hi - x_lo);
}

unsigned resolve_workers(unsigned requested) {
  unsigned workers = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("THINTAIL_THREADS")) {
    char* end = nullptr;
    const unsigned long limit = std::strtoul(cap, &end, 10);
    if (end != cap && limit > 0) workers = std::min<unsigned>(workers, static_cast<unsigned>(limit));
  }
  return std::max(1u, workers);
}

std::vector<double> simulate_annual_losses(const SeverityModel& severity,
                                           const FrequencyModel& freq, const LdaConfig& cfg) {
  cfg.validate();
  std::vector<double> sums(cfg.trials);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(cfg.workers), cfg.trials));
  if (workers == 1) {
    simulate_range(severity, freq, cfg.seed, 0, cfg.trials, sums);
    return sums;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, cfg.trials);
    const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, cfg.trials);
    pool.emplace_back([&, w, begin, end] {
      try {
        simulate_range(severity, freq, cfg.seed, begin, end, sums);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return sums;
}

CapitalResult run_lda(const SeverityModel& severity, const FrequencyModel& freq,
                      const LdaConfig& cfg) {
  const std::vector<double> sums = simulate_annual_losses(severity, freq, cfg);

  CapitalResult r;
  r.capital = empirical_percentile(sums, cfg.percentile);
  r.lambda = frequency_mean(freq);
  r.trials = cfg.trials;
  r.percentile = cfg.percentile;
  r.seed = cfg.seed;

  // Batch means over contiguous blocks of trials.
  const auto batches = static_cast<std::size_t>(cfg.batches);
  const std::size_t per_batch = sums.size() / batches;
  std::vector<double> batch_capital(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t begin = b * per_batch;
    const std::size_t end = b + 1 == batches ? sums.size() : begin + per_batch;
    batch_capital[b] = empirical_percentile(
        std::span<const double>(sums).subspan(begin, end - begin), cfg.percentile);
  }
  double mean = 0.0;
  for (double v : batch_capital) mean += v;
  mean /= static_cast<double>(batches);
  double ss = 0.0;
  for (double v : batch_capital) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(batches - 1));
  r.stderr_estimate = sd / std::sqrt(static_cast<double>(batches));

  const boost::math::students_t t_dist(static_cast<double>(batches - 1));
  r.half_width = boost::math::quantile(t_dist, 0.975) * r.stderr_estimate;
  r.converged = r.half_width < 0.01 * r.capital || (r.half_width == 0.0 && r.capital == 0.0);
  return r;
}

}  // namespace thintail::lda
