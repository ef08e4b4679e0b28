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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "thintail/error.hpp"
#include "thintail/lda.hpp"

namespace thintail::lda {
namespace {

using thintail::detail::domain_fail;
using thintail::detail::require;

struct Moments {
  double mean;
  double sd;
};

Moments sample_moments(std::span<const double> values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

double total(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace

ModelSpec ModelSpec::parse(const std::string& text) {
  ModelSpec spec;
  if (text == "exp4") return spec;
  if (text == "normal") {
    spec.kind = Kind::kNormal;
    return spec;
  }
  if (text == "lognormal") {
    spec.kind = Kind::kLogNormal;
    return spec;
  }
  const std::string prefix = "expn:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(digits, &used);
      require(used == digits.size(), "bad power");
    } catch (const std::exception&) {
      domain_fail("model: cannot parse power in '" + text + "'");
    }
    require(n >= 1, "model: ExpN power must be >= 1");
    spec.kind = n == 4 ? Kind::kExp4 : Kind::kExpN;
    spec.power = n;
    return spec;
  }
  domain_fail("model: unknown model '" + text + "' (expected exp4, expn:<n>, normal, lognormal)");
}

std::vector<ModelSpec> ModelSpec::parse_list(const std::string& comma_separated) {
  std::vector<ModelSpec> specs;
  std::stringstream ss(comma_separated);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) specs.push_back(parse(item));
  }
  require(!specs.empty(), "model list is empty");
  return specs;
}

std::string ModelSpec::to_string() const {
  switch (kind) {
    case Kind::kExp4:
      return "exp4";
    case Kind::kExpN:
      return "expn:" + std::to_string(power);
    case Kind::kNormal:
      return "normal";
    case Kind::kLogNormal:
      return "lognormal";
  }
  return "exp4";
}

ModelOutcome fit_model(std::span<const double> losses, const ModelSpec& spec,
                       const fit::FitConfig& fit_cfg) {
  require(losses.size() >= 2, "fit_model: need >= 2 losses");
  switch (spec.kind) {
    case ModelSpec::Kind::kExp4:
    case ModelSpec::Kind::kExpN: {
      fit::FitConfig cfg = fit_cfg;
      cfg.power = spec.kind == ModelSpec::Kind::kExp4 ? 4 : spec.power;
      fit::FitResult result = fit::fit_expn(losses, cfg);
      SeverityModel model = result.model();
      const double area = result.tna.area;
      return {spec, std::move(model), std::move(result), area, {}};
    }
    case ModelSpec::Kind::kNormal: {
      const fit::ScaledLosses scaled = fit::scale_losses(losses);
      const Moments m = sample_moments(scaled.scaled);
      require(m.sd > 0.0, "normal fit: losses have zero spread");
      SeverityModel model(BaselineParams(NormalParams(m.mean, m.sd)), scaled.mean);
      const double area = tna::tna_test(losses, model).area;
      return {spec, std::move(model), std::nullopt, area, {}};
    }
    case ModelSpec::Kind::kLogNormal: {
      const fit::ScaledLosses scaled = fit::scale_losses(losses);
      std::vector<double> logs(scaled.scaled.size());
      std::transform(scaled.scaled.begin(), scaled.scaled.end(), logs.begin(),
                     [](double v) { return std::log(v); });
      const Moments m = sample_moments(logs);
      require(m.sd > 0.0, "lognormal fit: losses have zero spread");
      SeverityModel model(BaselineParams(LogNormalParams(m.mean, m.sd)), scaled.mean);
      const double area = tna::tna_test(losses, model).area;
      return {spec, std::move(model), std::nullopt, area, {}};
    }
  }
  domain_fail("fit_model: unknown family");
}

Comparison compare_models(std::span<const double> losses, double years,
                          std::span<const ModelSpec> models, const LdaConfig& cfg,
                          const FrequencySpec& freq, const fit::FitConfig& fit_cfg,
                          std::string label) {
  require(losses.size() >= 2, "compare_models: need >= 2 losses");
  require(!models.empty(), "compare_models: no models given");
  cfg.validate();

  Comparison out;
  out.label = std::move(label);
  out.count = losses.size();
  out.sum = total(losses);
  out.lambda = annual_frequency(static_cast<std::int64_t>(losses.size()), years);
  const FrequencyModel frequency = freq.build(out.lambda);
  for (const ModelSpec& spec : models) {
    ModelOutcome outcome = fit_model(losses, spec, fit_cfg);
    outcome.capital = run_lda(outcome.model, frequency, cfg);
    out.outcomes.push_back(std::move(outcome));
  }
  return out;
}

std::vector<CurvePoint> percentile_vs_n(std::span<const double> losses, double years,
                                        std::span<const int> powers, const LdaConfig& cfg,
                                        bool with_capital, const FrequencySpec& freq,
                                        const fit::FitConfig& fit_cfg) {
  require(!powers.empty(), "percentile_vs_n: no powers given");
  std::vector<int> sorted(powers.begin(), powers.end());
  for (int n : sorted) require(n >= 2 && n % 2 == 0, "percentile_vs_n: powers must be even and >= 2");
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::optional<FrequencyModel> frequency;
  if (with_capital) {
    cfg.validate();
    frequency = freq.build(annual_frequency(static_cast<std::int64_t>(losses.size()), years));
  }

  std::vector<CurvePoint> out;
  for (int n : sorted) {
    fit::FitConfig c = fit_cfg;
    c.power = n;
    const fit::FitResult result = fit::fit_expn(losses, c);
    const SeverityModel model = result.model();
    CurvePoint point;
    point.power = n;
    point.s_hat = result.s_hat;
    point.tna_area = result.tna.area;
    point.q999 = model.quantile(0.999);
    if (frequency) point.capital = run_lda(model, *frequency, cfg).capital;
    out.push_back(point);
  }
  return out;
}

}  // namespace thintail::lda
