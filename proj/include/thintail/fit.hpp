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

#ifndef THINTAIL_FIT_HPP_
#define THINTAIL_FIT_HPP_

// Scale estimation for Exp4 / ExpN by minimizing the TN-A enclosed area.
//
// Losses are first divided by their mean, so the scale being searched is O(1).
// A 16-point log-spaced grid over [s_lo, s_hi] picks the bracket around the
// smallest area; golden-section search then refines inside it.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thintail/dist.hpp"
#include "thintail/tna.hpp"

namespace thintail::fit {

struct FitConfig {
  double s_lo = 0.05;
  double s_hi = 10.0;
  double tol = 1e-6;
  int power = 4;
  int max_evaluations = 200;

  void validate() const;
};

inline constexpr int kPrescanPoints = 16;

enum class FitWarning {
  kBoundary,          // s_hat within tol of s_lo or s_hi
  kDegenerateSample,  // every loss equal; the area surface says little about s
  kEvaluationCap,     // golden-section stopped at max_evaluations
};

std::string to_string(FitWarning w);

struct FitResult {
  double s_hat = 0.0;         // on the mean-scaled axis
  double scaling_mean = 0.0;  // mEUR
  int power = 4;
  tna::TnaResult tna;         // at s_hat on the scaled data
  int evaluations = 0;
  bool converged = false;
  std::vector<FitWarning> warnings;

  // s_hat expressed in loss units: s_hat * scaling_mean.
  double scale_in_loss_units() const noexcept { return s_hat * scaling_mean; }

  // Fitted law in loss units.
  SeverityModel model() const;
};

struct ScaledLosses {
  std::vector<double> scaled;
  double mean = 0.0;
};

// x_i / mean(x). Needs n >= 1 positive finite losses.
ScaledLosses scale_losses(std::span<const double> losses);

// The pre-scan grid s_lo * (s_hi / s_lo)^(i / 15), i = 0..15.
std::vector<double> prescan_grid(const FitConfig& cfg);

// TN-A area of already-scaled losses against ExpN(s, n).
double area_at(std::span<const double> scaled, double s, int power);

FitResult fit_exp4(std::span<const double> losses, FitConfig cfg = {});
FitResult fit_expn(std::span<const double> losses, const FitConfig& cfg);

}  // namespace thintail::fit

#endif  // THINTAIL_FIT_HPP_
