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

#include <cmath>
#include <limits>
#include <string>

#include "thintail/error.hpp"
#include "thintail/specfun.hpp"

namespace thintail::specfun {

Accuracy::Accuracy(double rel_tol, int max_iter) : rel_tol_(rel_tol), max_iter_(max_iter) {
  thintail::detail::require(rel_tol > 0.0 && rel_tol < 1e-6, "Accuracy: rel_tol must lie in (0, 1e-6)");
  thintail::detail::require(max_iter >= 100, "Accuracy: max_iter must be >= 100");
}

namespace {

constexpr double kTiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
constexpr double kUnderflowFloor = 1e-300;

void check_arguments(double a, double x, const char* who) {
  if (!std::isfinite(a) || a <= 0.0) {
    thintail::detail::domain_fail(std::string(who) + ": shape a must be finite and positive");
  }
  if (std::isnan(x) || x < 0.0) {
    thintail::detail::domain_fail(std::string(who) + ": x must be nonnegative");
  }
}

[[noreturn]] void convergence_fail(const char* method, double a, double x) {
  throw ConvergenceError(std::string("incomplete gamma ") + method + " did not converge for a=" +
                         std::to_string(a) + ", x=" + std::to_string(x));
}

// Power series: sum_{n>=0} x^n / ((a+1)...(a+n)), so that
// gamma(a, x) = x^a e^{-x} / a * series.
double lower_series(double a, double x, const Accuracy& acc) {
  double term = 1.0;
  double sum = 1.0;
  double denom = a;
  for (int i = 0; i < acc.max_iter(); ++i) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::abs(term) < std::abs(sum) * acc.rel_tol()) return sum;
  }
  convergence_fail("series", a, x);
}

// Modified Lentz evaluation of the continued fraction for Gamma(a, x) e^x x^-a.
double upper_continued_fraction(double a, double x, const Accuracy& acc) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= acc.max_iter(); ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < acc.rel_tol()) return h;
  }
  convergence_fail("continued fraction", a, x);
}

bool use_series(double a, double x) { return x < a + 1.0; }

}  // namespace

namespace detail {

RegularizedPair regularized_gamma_pq(double a, double x, const Accuracy& acc) {
  check_arguments(a, x, "regularized_gamma");
  if (x == 0.0) return {0.0, 1.0};
  if (std::isinf(x)) return {1.0, 0.0};

  const double log_prefix = a * std::log(x) - x;
  if (use_series(a, x)) {
    const double p = std::exp(log_prefix - log_gamma(a + 1.0)) * lower_series(a, x, acc);
    return {p, 1.0 - p};
  }
  double q = std::exp(log_prefix - log_gamma(a)) * upper_continued_fraction(a, x, acc);
  if (q < kUnderflowFloor) q = 0.0;
  return {1.0 - q, q};
}

}  // namespace detail

double upper_inc_gamma(double a, double x, const Accuracy& acc) {
  check_arguments(a, x, "upper_inc_gamma");
  if (x == 0.0) return gamma(a);
  if (std::isinf(x)) return 0.0;
  if (use_series(a, x)) {
    return gamma(a) * detail::regularized_gamma_pq(a, x, acc).q;
  }
  return std::exp(a * std::log(x) - x) * upper_continued_fraction(a, x, acc);
}

double regularized_upper_gamma(double a, double x, const Accuracy& acc) {
  check_arguments(a, x, "regularized_upper_gamma");
  const double q = detail::regularized_gamma_pq(a, x, acc).q;
  return q < kUnderflowFloor ? 0.0 : q;
}

}  // namespace thintail::specfun
