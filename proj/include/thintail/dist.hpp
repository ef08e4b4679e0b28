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

#ifndef THINTAIL_DIST_HPP_
#define THINTAIL_DIST_HPP_

// Severity distributions: the very-thin-tailed Exp4 law with density
// proportional to exp(-x^4 / (2 s^4)) on x > 0, its power-n generalization
// ExpN, the two-component Exp4 mixture, and the Normal / LogNormal / Weibull /
// Pareto baselines. Each family exposes pdf, cdf, quantile and sampling.
//
// Parameter types validate on construction and throw thintail::DomainError.

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "thintail/random.hpp"

namespace thintail {

class Exp4Params {
 public:
  explicit Exp4Params(double s);
  double s() const noexcept { return s_; }

 private:
  double s_;
};

class ExpNParams {
 public:
  ExpNParams(double s, int n);
  double s() const noexcept { return s_; }
  int n() const noexcept { return n_; }

 private:
  double s_;
  int n_;
};

// (1 - weight) * Exp4(s1) + weight * Exp4(s2).
class Exp4MixtureParams {
 public:
  Exp4MixtureParams(double weight, double s1, double s2);
  double weight() const noexcept { return weight_; }
  double s1() const noexcept { return s1_; }
  double s2() const noexcept { return s2_; }

 private:
  double weight_;
  double s1_;
  double s2_;
};

// Normal(mu, sigma) restricted to losses x >= 0.
class NormalParams {
 public:
  NormalParams(double mu, double sigma);
  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

 private:
  double mu_;
  double sigma_;
};

class LogNormalParams {
 public:
  LogNormalParams(double mu, double sigma);
  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

 private:
  double mu_;
  double sigma_;
};

// F(x) = 1 - exp(-(x / scale)^shape), shape in (0, 1].
class WeibullParams {
 public:
  WeibullParams(double shape, double scale);
  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }
  bool fat_tailed() const noexcept { return shape_ < 1.0; }

 private:
  double shape_;
  double scale_;
};

// F(x) = 1 - (1 + x / scale)^(-alpha).
class ParetoParams {
 public:
  ParetoParams(double scale, double alpha);
  double scale() const noexcept { return scale_; }
  double alpha() const noexcept { return alpha_; }

 private:
  double scale_;
  double alpha_;
};

using BaselineParams = std::variant<NormalParams, LogNormalParams, WeibullParams, ParetoParams>;

// Degenerate severity at a fixed loss; used to check the LDA engine.
class PointMassParams {
 public:
  explicit PointMassParams(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

enum class Sampler {
  kInverseCdf,      // quantile of a uniform; one root-find per draw
  kGammaTransform,  // X = s (2 G)^(1/n), G ~ Gamma(1/n, 1)
};

namespace dist {

// Lower end of the quantile search bracket.
inline constexpr double kQuantileEpsilon = 1e-12;
// Upper end of the initial bracket in units of s.
inline constexpr double kQuantileBracketScale = 20.0;
// Doublings of the upper end allowed when cdf(20 s) < p.
inline constexpr int kQuantileMaxExpansions = 8;

double exp4_pdf(double x, Exp4Params p);
double exp4_cdf(double x, Exp4Params p);
double exp4_sf(double x, Exp4Params p);
double exp4_quantile(double prob, Exp4Params p);
std::vector<double> exp4_sample(std::size_t count, Exp4Params p, RandomStream& stream,
                                Sampler sampler = Sampler::kGammaTransform);

double expn_pdf(double x, ExpNParams p);
double expn_cdf(double x, ExpNParams p);
double expn_sf(double x, ExpNParams p);
double expn_quantile(double prob, ExpNParams p);
std::vector<double> expn_sample(std::size_t count, ExpNParams p, RandomStream& stream,
                                Sampler sampler = Sampler::kGammaTransform);

// Vectorized density over many points (SIMD-dispatched).
void expn_pdf(std::span<const double> x, ExpNParams p, std::span<double> out);

// s (2^(1/n)) Gamma(1 + 1/n): the integral of exp(-x^n / (2 s^n)) over x > 0.
double expn_normalizer(ExpNParams p);

double exp4_mixture_pdf(double x, const Exp4MixtureParams& p);
double exp4_mixture_cdf(double x, const Exp4MixtureParams& p);
double exp4_mixture_sf(double x, const Exp4MixtureParams& p);
double exp4_mixture_quantile(double prob, const Exp4MixtureParams& p);
std::vector<double> exp4_mixture_sample(std::size_t count, const Exp4MixtureParams& p,
                                        RandomStream& stream);

double baseline_pdf(double x, const BaselineParams& p);
double baseline_cdf(double x, const BaselineParams& p);
double baseline_quantile(double prob, const BaselineParams& p);
std::vector<double> baseline_sample(std::size_t count, const BaselineParams& p,
                                    RandomStream& stream);

// Standard normal cdf and quantile.
double normal_cdf(double z);
double normal_quantile(double prob);

}  // namespace dist

using SeverityParams =
    std::variant<Exp4Params, ExpNParams, Exp4MixtureParams, BaselineParams, PointMassParams>;

// A severity law expressed in loss units. The underlying parameters live on the
// mean-scaled axis; scaling_mean (mEUR per scaled unit) maps between the two,
// so cdf(loss) = F(loss / m) and samples are m times the scaled draws.
class SeverityModel {
 public:
  explicit SeverityModel(SeverityParams params, double scaling_mean = 1.0,
                         Sampler sampler = Sampler::kGammaTransform);

  const SeverityParams& params() const noexcept { return params_; }
  double scaling_mean() const noexcept { return scaling_mean_; }
  Sampler sampler() const noexcept { return sampler_; }

  double pdf(double loss) const;
  double cdf(double loss) const;
  double quantile(double prob) const;

  // Fills out with independent draws in loss units.
  void sample(RandomStream& stream, std::span<double> out) const;
  std::vector<double> sample(std::size_t count, RandomStream& stream) const;

  // Short family tag: exp4, expn:<n>, exp4mix, normal, lognormal, weibull,
  // pareto, pointmass.
  std::string family() const;

 private:
  SeverityParams params_;
  double scaling_mean_;
  Sampler sampler_;
};

// ExpN with n = 4 is represented as Exp4 so both code paths coincide.
SeverityModel make_power_model(double s, int n, double scaling_mean = 1.0);

}  // namespace thintail

#endif  // THINTAIL_DIST_HPP_
