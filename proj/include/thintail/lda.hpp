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

#ifndef THINTAIL_LDA_HPP_
#define THINTAIL_LDA_HPP_

// Loss Distribution Approach: annual loss = sum of a random number of
// severity draws; capital = a high percentile (99.9% by default) of the
// simulated annual losses.
//
// Trial t draws everything from RandomStream(seed, t), so the simulated sums
// and the capital do not depend on how trials are spread over workers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "thintail/dist.hpp"
#include "thintail/fit.hpp"
#include "thintail/random.hpp"

namespace thintail::lda {

class PoissonFrequency {
 public:
  explicit PoissonFrequency(double lambda);
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

// Gamma-Poisson mixture: variance = mean + mean^2 / dispersion.
class NegativeBinomialFrequency {
 public:
  NegativeBinomialFrequency(double mean, double dispersion);
  double mean() const noexcept { return mean_; }
  double dispersion() const noexcept { return dispersion_; }

 private:
  double mean_;
  double dispersion_;
};

// round-half-up(max(0, lambda + sqrt(lambda) Z)).
class NormalApproxFrequency {
 public:
  explicit NormalApproxFrequency(double lambda);
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

using FrequencyModel =
    std::variant<PoissonFrequency, NegativeBinomialFrequency, NormalApproxFrequency>;

std::int64_t draw_count(const FrequencyModel& freq, RandomStream& stream);
double frequency_mean(const FrequencyModel& freq);

// How to build a frequency model once lambda is known: "poisson",
// "negbin:<dispersion>" or "normal".
struct FrequencySpec {
  enum class Kind { kPoisson, kNegativeBinomial, kNormalApprox };
  Kind kind = Kind::kPoisson;
  double dispersion = 0.0;

  static FrequencySpec parse(const std::string& text);
  std::string to_string() const;
  FrequencyModel build(double lambda) const;
};

// lambda = N / y.
double annual_frequency(std::int64_t loss_count, double years);

struct LdaConfig {
  std::uint64_t trials = 100000;
  double percentile = 0.999;
  std::uint64_t seed = 1;
  int batches = 20;
  unsigned workers = 0;  // 0: hardware concurrency, capped by THINTAIL_THREADS

  void validate() const;
};

inline constexpr std::uint64_t kMinTrials = 1000;

struct CapitalResult {
  double capital = 0.0;  // mEUR
  double lambda = 0.0;   // mean events per year
  std::uint64_t trials = 0;
  double percentile = 0.0;
  double stderr_estimate = 0.0;  // batch-means standard error, mEUR
  double half_width = 0.0;       // 95% batch-means half-width, mEUR
  bool converged = false;        // half_width < 1% of capital
  std::uint64_t seed = 0;
};

// Linear interpolation between order statistics at rank (N - 1) p.
double empirical_percentile(std::span<const double> values, double p);

unsigned resolve_workers(unsigned requested);

// Annual aggregate loss of every trial, in trial order.
std::vector<double> simulate_annual_losses(const SeverityModel& severity,
                                           const FrequencyModel& freq, const LdaConfig& cfg);

CapitalResult run_lda(const SeverityModel& severity, const FrequencyModel& freq,
                      const LdaConfig& cfg);

// A severity family to fit and compare: exp4, expn:<n>, normal, lognormal.
struct ModelSpec {
  enum class Kind { kExp4, kExpN, kNormal, kLogNormal };
  Kind kind = Kind::kExp4;
  int power = 4;

  static ModelSpec parse(const std::string& text);
  static std::vector<ModelSpec> parse_list(const std::string& comma_separated);
  std::string to_string() const;
};

struct ModelOutcome {
  ModelSpec spec;
  SeverityModel model;
  std::optional<fit::FitResult> fit;  // set for the TN-A fitted families
  double tna_area = 0.0;
  CapitalResult capital;
};

struct Comparison {
  std::string label;
  std::size_t count = 0;
  double sum = 0.0;
  double lambda = 0.0;
  std::vector<ModelOutcome> outcomes;
};

// Fits a model of the given family: TN-A search for exp4/expn, moment
// matching (on mean-scaled losses) for normal/lognormal.
ModelOutcome fit_model(std::span<const double> losses, const ModelSpec& spec,
                       const fit::FitConfig& fit_cfg);

Comparison compare_models(std::span<const double> losses, double years,
                          std::span<const ModelSpec> models, const LdaConfig& cfg,
                          const FrequencySpec& freq = {}, const fit::FitConfig& fit_cfg = {},
                          std::string label = "");

struct CurvePoint {
  int power = 0;
  double s_hat = 0.0;     // scaled axis
  double tna_area = 0.0;
  double q999 = 0.0;      // severity 99.9% quantile, mEUR
  std::optional<double> capital;
};

// Fits ExpN for each (even) power and reports its 99.9% severity quantile and,
// when with_capital is set, its LDA capital. Output sorted by power.
std::vector<CurvePoint> percentile_vs_n(std::span<const double> losses, double years,
                                        std::span<const int> powers, const LdaConfig& cfg,
                                        bool with_capital = true,
                                        const FrequencySpec& freq = {},
                                        const fit::FitConfig& fit_cfg = {});

}  // namespace thintail::lda

#endif  // THINTAIL_LDA_HPP_
