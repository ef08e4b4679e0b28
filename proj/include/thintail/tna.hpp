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

#ifndef THINTAIL_TNA_HPP_
#define THINTAIL_TNA_HPP_

// TN-A goodness of fit. Losses x_(1) <= ... <= x_(n) get plotting positions
// y_i = (i - 0.5) / n; the map (x, y) -> (F(x), y) sends them into the unit
// square, where a perfect fit lies on the diagonal. The statistic is the area
// enclosed between the diagonal and the polyline through the mapped points,
// closed off at (0, 0) and (1, 1). Smaller is better.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "thintail/dist.hpp"

namespace thintail::tna {

struct EmpiricalPoint {
  double x;  // loss
  double y;  // plotting position
};

class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<EmpiricalPoint> points);

  std::span<const EmpiricalPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<EmpiricalPoint> points_;
};

// A point of Probability-Space: x = F(loss), y = plotting position.
struct UnitPoint {
  double x;
  double y;
};

enum class Tails { kOne, kTwo };

struct Decision {
  double level_percent;
  double critical_value;
  bool reject;  // area > critical_value
};

struct TnaResult {
  double area = 0.0;
  std::size_t n_points = 0;
  int crossings = 0;
  // Two-tailed decisions at 1%, 5% and 10%.
  std::array<Decision, 3> decisions{};
  // Smallest two-tailed level (as a probability) at which the fit is rejected.
  double attained_level = 0.0;
};

inline constexpr std::array<double, 3> kStandardLevels = {1.0, 5.0, 10.0};

// Sorts the losses and attaches plotting positions. Needs n >= 2 positive,
// finite losses.
EmpiricalDistribution empirical_from_losses(std::span<const double> losses);

std::vector<UnitPoint> to_probability_space(const EmpiricalDistribution& emp,
                                            const SeverityModel& model);

// Enclosed area for >= 2 points of the unit square with nondecreasing x.
double enclosed_area(std::span<const UnitPoint> points);

// Number of times the closed polyline crosses the diagonal.
int count_crossings(std::span<const UnitPoint> points);

// A(p) = 2 sqrt(2) p (1 - sqrt(2) p), for 0 < p < 1/sqrt(2).
double significance_area(double p);

// Critical area for a level given in percent.
double critical_value(double level_percent, Tails tails = Tails::kTwo);

// Smaller root p of A(p) = area, 0 <= area <= 1/2.
double invert_significance(double area);

TnaResult evaluate(std::span<const UnitPoint> points);

TnaResult tna_test(std::span<const double> losses, const SeverityModel& model);

}  // namespace thintail::tna

#endif  // THINTAIL_TNA_HPP_
