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

#include "thintail/tna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thintail/error.hpp"
#include "thintail/simd.hpp"

namespace thintail::tna {
namespace {

using thintail::detail::domain_fail;
using thintail::detail::require;

// Polyline closed off with (0, 0) and (1, 1), split into coordinate arrays.
struct Closed {
  std::vector<double> x;
  std::vector<double> y;
};

Closed close_polyline(std::span<const UnitPoint> points) {
  require(points.size() >= 2, "enclosed_area: need at least two points");
  Closed c;
  c.x.reserve(points.size() + 2);
  c.y.reserve(points.size() + 2);
  c.x.push_back(0.0);
  c.y.push_back(0.0);
  double previous_x = 0.0;
  for (const UnitPoint& p : points) {
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      domain_fail("enclosed_area: point outside the unit square");
    }
    if (p.x < previous_x) domain_fail("enclosed_area: x must be nondecreasing");
    previous_x = p.x;
    c.x.push_back(p.x);
    c.y.push_back(p.y);
  }
  c.x.push_back(1.0);
  c.y.push_back(1.0);
  return c;
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<EmpiricalPoint> points)
    : points_(std::move(points)) {
  require(points_.size() >= 2, "empirical distribution: need at least two losses");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    require(points_[i].x >= points_[i - 1].x, "empirical distribution: x must be nondecreasing");
    require(points_[i].y > points_[i - 1].y, "empirical distribution: y must increase");
  }
}

EmpiricalDistribution empirical_from_losses(std::span<const double> losses) {
  require(losses.size() >= 2, "empirical distribution: need at least two losses");
  std::vector<double> sorted(losses.begin(), losses.end());
  for (double v : sorted) {
    require(std::isfinite(v) && v > 0.0, "empirical distribution: losses must be positive");
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<EmpiricalPoint> points(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    points[i] = {sorted[i], (static_cast<double>(i) + 0.5) / n};
  }
  return EmpiricalDistribution(std::move(points));
}

std::vector<UnitPoint> to_probability_space(const EmpiricalDistribution& emp,
                                            const SeverityModel& model) {
  std::vector<UnitPoint> out;
  out.reserve(emp.size());
  for (const EmpiricalPoint& p : emp.points()) out.push_back({model.cdf(p.x), p.y});
  return out;
}

double enclosed_area(std::span<const UnitPoint> points) {
  const Closed c = close_polyline(points);
  return simd::active_kernels().enclosed_area(c.x, c.y);
}

int count_crossings(std::span<const UnitPoint> points) {
  const Closed c = close_polyline(points);
  int crossings = 0;
  double last_sign = 0.0;
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    const double d = c.y[i] - c.x[i];
    if (d == 0.0) continue;
    const double sign = d > 0.0 ? 1.0 : -1.0;
    if (last_sign != 0.0 && sign != last_sign) ++crossings;
    last_sign = sign;
  }
  return crossings;
}

double significance_area(double p) {
  if (!(p > 0.0 && p < 1.0 / std::numbers::sqrt2)) {
    domain_fail("significance_area: p must lie in (0, 1/sqrt(2))");
  }
  const double r = std::numbers::sqrt2 * p;
  return 2.0 * r * (1.0 - r);
}

double critical_value(double level_percent, Tails tails) {
  if (!(level_percent > 0.0 && level_percent < 100.0)) {
    domain_fail("critical_value: level must lie in (0, 100) percent");
  }
  const double p = tails == Tails::kTwo ? level_percent / 200.0 : level_percent / 100.0;
  return significance_area(p);
}

double invert_significance(double area) {
  if (!(area >= 0.0 && area <= 0.5)) {
    domain_fail("invert_significance: area must lie in [0, 1/2]");
  }
  // (sqrt2 - sqrt(2 - 4A)) / 4 without the cancellation.
  return area / (std::numbers::sqrt2 + std::sqrt(2.0 - 4.0 * area));
}

TnaResult evaluate(std::span<const UnitPoint> points) {
  TnaResult r;
  r.area = enclosed_area(points);
  r.n_points = points.size();
  r.crossings = count_crossings(points);
  for (std::size_t i = 0; i < kStandardLevels.size(); ++i) {
    const double t = critical_value(kStandardLevels[i], Tails::kTwo);
    r.decisions[i] = {kStandardLevels[i], t, r.area > t};
  }
  r.attained_level = 2.0 * invert_significance(std::min(r.area, 0.5));
  return r;
}

TnaResult tna_test(std::span<const double> losses, const SeverityModel& model) {
  const EmpiricalDistribution emp = empirical_from_losses(losses);
  return evaluate(to_probability_space(emp, model));
}

}  // namespace thintail::tna
