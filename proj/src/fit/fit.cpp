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

#include "thintail/fit.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "thintail/error.hpp"

namespace thintail::fit {
namespace {

using thintail::detail::require;

// 1 / golden ratio.
constexpr double kInvPhi = 0.6180339887498948482;

double neumaier_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

class Objective {
 public:
  Objective(const tna::EmpiricalDistribution& emp, int power) : emp_(emp), power_(power) {}

  double operator()(double s) {
    ++evaluations_;
    const double area =
        tna::enclosed_area(tna::to_probability_space(emp_, make_power_model(s, power_)));
    if (area < best_area_) {
      best_area_ = area;
      best_s_ = s;
    }
    return area;
  }

  int evaluations() const { return evaluations_; }
  double best_s() const { return best_s_; }

 private:
  const tna::EmpiricalDistribution& emp_;
  int power_;
  int evaluations_ = 0;
  double best_area_ = HUGE_VAL;
  double best_s_ = 0.0;
};

}  // namespace

void FitConfig::validate() const {
  require(std::isfinite(s_lo) && s_lo > 0.0 && std::isfinite(s_hi) && s_lo < s_hi,
          "FitConfig: need 0 < s_lo < s_hi");
  require(tol > 0.0, "FitConfig: tol must be positive");
  require(power >= 1, "FitConfig: power must be >= 1");
  require(max_evaluations > kPrescanPoints, "FitConfig: max_evaluations must exceed the pre-scan");
}

std::string to_string(FitWarning w) {
  switch (w) {
    case FitWarning::kBoundary:
      return "boundary";
    case FitWarning::kDegenerateSample:
      return "degenerate-sample";
    case FitWarning::kEvaluationCap:
      return "evaluation-cap";
  }
  return "unknown";
}

SeverityModel FitResult::model() const { return make_power_model(s_hat, power, scaling_mean); }

ScaledLosses scale_losses(std::span<const double> losses) {
  require(!losses.empty(), "scale_losses: no losses");
  for (double v : losses) {
    require(std::isfinite(v) && v > 0.0, "scale_losses: losses must be positive and finite");
  }
  ScaledLosses out;
  out.mean = neumaier_sum(losses) / static_cast<double>(losses.size());
  out.scaled.reserve(losses.size());
  for (double v : losses) out.scaled.push_back(v / out.mean);
  return out;
}

std::vector<double> prescan_grid(const FitConfig& cfg) {
  cfg.validate();
  std::vector<double> grid(kPrescanPoints);
  const double log_lo = std::log(cfg.s_lo);
  const double step = (std::log(cfg.s_hi) - log_lo) / (kPrescanPoints - 1);
  for (int i = 0; i < kPrescanPoints; ++i) grid[i] = std::exp(log_lo + step * i);
  grid.front() = cfg.s_lo;
  grid.back() = cfg.s_hi;
  return grid;
}

double area_at(std::span<const double> scaled, double s, int power) {
  return tna::tna_test(scaled, make_power_model(s, power)).area;
}

FitResult fit_expn(std::span<const double> losses, const FitConfig& cfg) {
  cfg.validate();
  require(losses.size() >= 2, "fit: need >= 2 losses");
  const ScaledLosses scaled = scale_losses(losses);
  const tna::EmpiricalDistribution emp = tna::empirical_from_losses(scaled.scaled);
  Objective objective(emp, cfg.power);

  const std::vector<double> grid = prescan_grid(cfg);
  std::vector<double> grid_area(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid_area[i] = objective(grid[i]);
  const auto k = static_cast<std::size_t>(
      std::min_element(grid_area.begin(), grid_area.end()) - grid_area.begin());

  double a = grid[k == 0 ? 0 : k - 1];
  double b = grid[std::min(k + 1, grid.size() - 1)];
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  bool converged = true;
  while (b - a > cfg.tol) {
    if (objective.evaluations() >= cfg.max_evaluations) {
      converged = false;
      break;
    }
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }

  FitResult result;
  result.s_hat = objective.best_s();
  result.scaling_mean = scaled.mean;
  result.power = cfg.power;
  result.evaluations = objective.evaluations();
  result.converged = converged;
  result.tna = tna::evaluate(tna::to_probability_space(emp, make_power_model(result.s_hat, cfg.power)));

  if (!converged) result.warnings.push_back(FitWarning::kEvaluationCap);
  if (result.s_hat - cfg.s_lo < cfg.tol || cfg.s_hi - result.s_hat < cfg.tol) {
    result.warnings.push_back(FitWarning::kBoundary);
  }
  const auto [lo, hi] = std::minmax_element(losses.begin(), losses.end());
  if (*lo == *hi) result.warnings.push_back(FitWarning::kDegenerateSample);
  return result;
}

FitResult fit_exp4(std::span<const double> losses, FitConfig cfg) {
  cfg.power = 4;
  return fit_expn(losses, cfg);
}

}  // namespace thintail::fit
