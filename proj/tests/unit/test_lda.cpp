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
#include <cstdlib>
#include <vector>

#include <gtest/gtest.h>

#include "thintail/dist.hpp"
#include "thintail/error.hpp"
#include "thintail/lda.hpp"

namespace thintail::lda {
namespace {

LdaConfig config(std::uint64_t trials, std::uint64_t seed = 1) {
  LdaConfig c;
  c.trials = trials;
  c.seed = seed;
  return c;
}

std::vector<double> sample_losses() {
  return {12.0, 31.5, 7.25, 44.0, 19.0, 23.5, 5.5, 38.0, 27.0, 15.0,
          21.0, 9.75, 33.0, 17.5, 26.0, 11.0, 29.5, 14.0, 36.0, 20.0};
}

TEST(AnnualFrequency, Examples) {
  EXPECT_EQ(annual_frequency(30, 5.0), 6.0);
  EXPECT_DOUBLE_EQ(annual_frequency(29, 5.0), 5.8);
  EXPECT_THROW(annual_frequency(0, 5.0), DomainError);
  EXPECT_THROW(annual_frequency(3, 0.0), DomainError);
}

TEST(Frequency, Invariants) {
  EXPECT_THROW(PoissonFrequency(0.0), DomainError);
  EXPECT_THROW(NegativeBinomialFrequency(1.0, 0.0), DomainError);
  EXPECT_THROW(NormalApproxFrequency(-1.0), DomainError);
}

TEST(Frequency, Moments) {
  const int n = 100000;
  struct Case {
    FrequencyModel model;
    double mean;
    double var;
  };
  const std::vector<Case> cases = {
      {PoissonFrequency(6.0), 6.0, 6.0},
      {NegativeBinomialFrequency(6.0, 3.0), 6.0, 6.0 + 36.0 / 3.0},
      {NormalApproxFrequency(400.0), 400.0, 400.0}};
  for (std::size_t c = 0; c < cases.size(); ++c) {
    RandomStream s(99, c);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto k = draw_count(cases[c].model, s);
      ASSERT_GE(k, 0);
      sum += static_cast<double>(k);
      sum2 += static_cast<double>(k) * static_cast<double>(k);
    }
    const double mean = sum / n;
    EXPECT_NEAR(mean, cases[c].mean, 5 * std::sqrt(cases[c].var / n)) << c;
    EXPECT_NEAR(sum2 / n - mean * mean, cases[c].var, 0.03 * cases[c].var) << c;
    EXPECT_EQ(frequency_mean(cases[c].model), cases[c].mean);
  }
}

TEST(Frequency, NormalApproxNeverNegative) {
  RandomStream s(3);
  for (int i = 0; i < 10000; ++i) ASSERT_GE(draw_count(NormalApproxFrequency(0.5), s), 0);
}

TEST(FrequencySpecTest, ParseAndPrint) {
  EXPECT_EQ(FrequencySpec::parse("poisson").kind, FrequencySpec::Kind::kPoisson);
  const FrequencySpec nb = FrequencySpec::parse("negbin:2.5");
  EXPECT_EQ(nb.kind, FrequencySpec::Kind::kNegativeBinomial);
  EXPECT_EQ(nb.dispersion, 2.5);
  EXPECT_EQ(FrequencySpec::parse(nb.to_string()).dispersion, 2.5);
  EXPECT_EQ(FrequencySpec::parse("normal").kind, FrequencySpec::Kind::kNormalApprox);
  EXPECT_THROW(FrequencySpec::parse("binomial"), DomainError);
  EXPECT_THROW(FrequencySpec::parse("negbin:"), DomainError);
  EXPECT_THROW(FrequencySpec::parse("negbin:-1"), DomainError);
}

TEST(LdaConfigTest, Validation) {
  EXPECT_NO_THROW(config(1000).validate());
  EXPECT_THROW(config(999).validate(), DomainError);
  LdaConfig c = config(5000);
  c.percentile = 1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c.percentile = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(EmpiricalPercentile, LinearInterpolation) {
  const std::vector<double> v = {4.0, 1.0, 3.0, 2.0, 5.0};
  EXPECT_EQ(empirical_percentile(v, 0.0), 1.0);
  EXPECT_EQ(empirical_percentile(v, 1.0), 5.0);
  EXPECT_EQ(empirical_percentile(v, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(empirical_percentile(v, 0.3), 2.2);
  EXPECT_THROW(empirical_percentile(std::vector<double>{}, 0.5), DomainError);
}

TEST(RunLda, NoEventsGiveZeroCapital) {
  const CapitalResult r =
      run_lda(SeverityModel(Exp4Params(1.0), 10.0), PoissonFrequency(1e-9), config(10000));
  EXPECT_EQ(r.capital, 0.0);
}

TEST(RunLda, PointMassNearPoissonQuantile) {
  const CapitalResult r =
      run_lda(SeverityModel(PointMassParams(2.0)), PoissonFrequency(6.0), config(200000));
  EXPECT_NEAR(r.capital, 2.0 * 15.0, 2.0);
  EXPECT_EQ(r.lambda, 6.0);
  EXPECT_EQ(r.seed, 1u);
}

TEST(RunLda, WorkerCountDoesNotChangeResult) {
  const SeverityModel m(Exp4Params(0.9), 25.0);
  LdaConfig c = config(20000, 7);
  c.workers = 1;
  const CapitalResult one = run_lda(m, PoissonFrequency(4.0), c);
  c.workers = 3;
  const CapitalResult three = run_lda(m, PoissonFrequency(4.0), c);
  c.workers = 8;
  const CapitalResult eight = run_lda(m, PoissonFrequency(4.0), c);
  EXPECT_EQ(one.capital, three.capital);
  EXPECT_EQ(one.capital, eight.capital);
  EXPECT_EQ(one.half_width, eight.half_width);
}

TEST(RunLda, SeedChangesResult) {
  const SeverityModel m(Exp4Params(0.9), 25.0);
  EXPECT_NE(run_lda(m, PoissonFrequency(4.0), config(5000, 1)).capital,
            run_lda(m, PoissonFrequency(4.0), config(5000, 2)).capital);
}

TEST(RunLda, MonotoneInPercentile) {
  const SeverityModel m(ExpNParams(0.9, 8), 25.0);
  LdaConfig c = config(20000, 5);
  c.percentile = 0.99;
  const double q99 = run_lda(m, NegativeBinomialFrequency(5.0, 2.0), c).capital;
  c.percentile = 0.999;
  const double q999 = run_lda(m, NegativeBinomialFrequency(5.0, 2.0), c).capital;
  EXPECT_LE(q99, q999);
}

TEST(RunLda, ConvergedFlagMatchesHalfWidth) {
  for (std::uint64_t trials : {2000u, 50000u}) {
    const CapitalResult r =
        run_lda(SeverityModel(Exp4Params(1.0), 10.0), PoissonFrequency(6.0), config(trials));
    EXPECT_EQ(r.converged, r.half_width < 0.01 * r.capital) << trials;
    EXPECT_GT(r.stderr_estimate, 0.0);
  }
}

TEST(RunLda, StandardErrorShrinksLikeRootTrials) {
  const SeverityModel m(Exp4Params(1.0), 10.0);
  const double e4 = run_lda(m, PoissonFrequency(6.0), config(10000)).stderr_estimate;
  const double e5 = run_lda(m, PoissonFrequency(6.0), config(100000)).stderr_estimate;
  const double e6 = run_lda(m, PoissonFrequency(6.0), config(1000000)).stderr_estimate;
  const double root10 = std::sqrt(10.0);
  EXPECT_GT(e4 / e5, root10 / 2.0);
  EXPECT_LT(e4 / e5, root10 * 2.0);
  EXPECT_GT(e5 / e6, root10 / 2.0);
  EXPECT_LT(e5 / e6, root10 * 2.0);
}

TEST(ResolveWorkers, EnvironmentCap) {
  ::setenv("THINTAIL_THREADS", "2", 1);
  EXPECT_EQ(resolve_workers(8), 2u);
  EXPECT_EQ(resolve_workers(1), 1u);
  ::setenv("THINTAIL_THREADS", "junk", 1);
  EXPECT_EQ(resolve_workers(5), 5u);
  ::unsetenv("THINTAIL_THREADS");
  EXPECT_EQ(resolve_workers(5), 5u);
  EXPECT_GE(resolve_workers(0), 1u);
}

TEST(ModelSpecTest, Parse) {
  EXPECT_EQ(ModelSpec::parse("exp4").kind, ModelSpec::Kind::kExp4);
  const ModelSpec e = ModelSpec::parse("expn:100");
  EXPECT_EQ(e.kind, ModelSpec::Kind::kExpN);
  EXPECT_EQ(e.power, 100);
  EXPECT_EQ(e.to_string(), "expn:100");
  EXPECT_EQ(ModelSpec::parse("normal").kind, ModelSpec::Kind::kNormal);
  EXPECT_EQ(ModelSpec::parse("lognormal").to_string(), "lognormal");
  EXPECT_THROW(ModelSpec::parse("gumbel"), DomainError);
  EXPECT_THROW(ModelSpec::parse("expn:x"), DomainError);
  EXPECT_THROW(ModelSpec::parse("expn:0"), DomainError);
  EXPECT_EQ(ModelSpec::parse_list("exp4,normal,expn:100").size(), 3u);
  EXPECT_THROW(ModelSpec::parse_list(""), DomainError);
}

TEST(FitModel, MomentMatchedBaselines) {
  const auto losses = sample_losses();
  const ModelOutcome n = fit_model(losses, ModelSpec::parse("normal"), {});
  EXPECT_EQ(n.model.family(), "normal");
  EXPECT_FALSE(n.fit.has_value());
  const auto& p = std::get<NormalParams>(std::get<BaselineParams>(n.model.params()));
  EXPECT_NEAR(p.mu(), 1.0, 1e-15);
  EXPECT_GT(n.tna_area, 0.0);
  const ModelOutcome l = fit_model(losses, ModelSpec::parse("lognormal"), {});
  EXPECT_EQ(l.model.family(), "lognormal");
  const ModelOutcome e = fit_model(losses, ModelSpec::parse("exp4"), {});
  ASSERT_TRUE(e.fit.has_value());
  EXPECT_EQ(e.tna_area, e.fit->tna.area);
}

TEST(CompareModels, StructureAndErrors) {
  const auto losses = sample_losses();
  const std::vector<ModelSpec> models = ModelSpec::parse_list("exp4,normal,expn:100");
  const Comparison c = compare_models(losses, 5.0, models, config(5000), {}, {}, "set-a");
  EXPECT_EQ(c.label, "set-a");
  EXPECT_EQ(c.count, 20u);
  EXPECT_DOUBLE_EQ(c.sum, 440.5);
  EXPECT_EQ(c.lambda, 4.0);
  ASSERT_EQ(c.outcomes.size(), 3u);
  for (const auto& o : c.outcomes) {
    EXPECT_GT(o.capital.capital, 0.0);
    EXPECT_EQ(o.capital.seed, 1u);
  }
  EXPECT_THROW(compare_models(losses, 5.0, std::vector<ModelSpec>{}, config(5000)), DomainError);
  EXPECT_THROW(compare_models(std::vector<double>{1.0}, 5.0, models, config(5000)), DomainError);
}

TEST(CompareModels, CapitalScalesWithLosses) {
  const auto losses = sample_losses();
  std::vector<double> scaled = losses;
  for (double& v : scaled) v *= 8.0;
  const std::vector<ModelSpec> models = ModelSpec::parse_list("exp4,normal");
  const Comparison a = compare_models(losses, 5.0, models, config(5000));
  const Comparison b = compare_models(scaled, 5.0, models, config(5000));
  for (std::size_t i = 0; i < models.size(); ++i) {
    EXPECT_EQ(b.outcomes[i].capital.capital, 8.0 * a.outcomes[i].capital.capital) << i;
  }
}

TEST(PercentileVsN, OrderedAndValidated) {
  const auto losses = sample_losses();
  const std::vector<int> powers = {8, 4, 6};
  const auto curve = percentile_vs_n(losses, 5.0, powers, config(2000), true);
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_EQ(curve[0].power, 4);
  EXPECT_EQ(curve[1].power, 6);
  EXPECT_EQ(curve[2].power, 8);
  for (const auto& p : curve) {
    ASSERT_TRUE(p.capital.has_value());
    EXPECT_GT(p.q999, 0.0);
  }
  const auto bare = percentile_vs_n(losses, 5.0, powers, config(2000), false);
  EXPECT_FALSE(bare[0].capital.has_value());
  EXPECT_EQ(bare[0].q999, curve[0].q999);
  EXPECT_THROW(percentile_vs_n(losses, 5.0, std::vector<int>{5}, config(2000)), DomainError);
  EXPECT_THROW(percentile_vs_n(losses, 5.0, std::vector<int>{}, config(2000)), DomainError);
}

}  // namespace
}  // namespace thintail::lda
