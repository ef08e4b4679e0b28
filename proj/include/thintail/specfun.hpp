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

#ifndef THINTAIL_SPECFUN_HPP_
#define THINTAIL_SPECFUN_HPP_

// Gamma-family special functions used by the Exp4/ExpN distributions.
//
// All functions are pure and thread-safe. Domain violations throw
// thintail::DomainError; iteration-cap overruns throw
// thintail::ConvergenceError.

namespace thintail::specfun {

// Tolerance control for the iterative incomplete-gamma evaluations.
class Accuracy {
 public:
  // rel_tol in (0, 1e-6), max_iter >= 100.
  Accuracy(double rel_tol, int max_iter);
  Accuracy() = default;

  double rel_tol() const noexcept { return rel_tol_; }
  int max_iter() const noexcept { return max_iter_; }

 private:
  double rel_tol_ = 1e-15;
  int max_iter_ = 2000;
};

// ln Gamma(a) for finite a > 0.
double log_gamma(double a);

// Gamma(a) for a > 0 (overflows to +inf above a ~ 171.6).
double gamma(double a);

// Upper incomplete gamma Gamma(a, x) = int_x^inf t^(a-1) e^(-t) dt.
double upper_inc_gamma(double a, double x, const Accuracy& acc = {});

// Q(a, x) = Gamma(a, x) / Gamma(a), evaluated in log space. Values below
// 1e-300 are returned as 0.
double regularized_upper_gamma(double a, double x, const Accuracy& acc = {});

namespace detail {

// Both regularized halves, each computed on its well-conditioned side so that
// the smaller of P and Q keeps full relative precision.
struct RegularizedPair {
  double p;  // P(a, x) = gamma(a, x) / Gamma(a)
  double q;  // Q(a, x)
};

RegularizedPair regularized_gamma_pq(double a, double x, const Accuracy& acc = {});

}  // namespace detail
}  // namespace thintail::specfun

#endif  // THINTAIL_SPECFUN_HPP_
