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
#include <random>
#include <sstream>
#include <string>

#include "thintail/error.hpp"
#include "thintail/lda.hpp"

namespace thintail::lda {
namespace {

using thintail::detail::require;

std::int64_t poisson_draw(double lambda, RandomStream& stream) {
  if (lambda <= 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(lambda);
  return dist(stream);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

PoissonFrequency::PoissonFrequency(double lambda) : lambda_(lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "Poisson frequency: lambda must be positive");
}

NegativeBinomialFrequency::NegativeBinomialFrequency(double mean, double dispersion)
    : mean_(mean), dispersion_(dispersion) {
  require(std::isfinite(mean) && mean > 0.0, "negative binomial: mean must be positive");
  require(std::isfinite(dispersion) && dispersion > 0.0,
          "negative binomial: dispersion must be positive");
}

NormalApproxFrequency::NormalApproxFrequency(double lambda) : lambda_(lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "normal frequency: lambda must be positive");
}

std::int64_t draw_count(const FrequencyModel& freq, RandomStream& stream) {
  return std::visit(
      Overloaded{
          [&](const PoissonFrequency& f) { return poisson_draw(f.lambda(), stream); },
          [&](const NegativeBinomialFrequency& f) {
            const double rate =
                gamma_variate(f.dispersion(), stream) * (f.mean() / f.dispersion());
            return poisson_draw(rate, stream);
          },
          [&](const NormalApproxFrequency& f) {
            const double v = f.lambda() + std::sqrt(f.lambda()) * standard_normal(stream);
            return v <= 0.0 ? std::int64_t{0} : static_cast<std::int64_t>(std::floor(v + 0.5));
          },
      },
      freq);
}

double frequency_mean(const FrequencyModel& freq) {
  return std::visit(Overloaded{
                        [](const PoissonFrequency& f) { return f.lambda(); },
                        [](const NegativeBinomialFrequency& f) { return f.mean(); },
                        [](const NormalApproxFrequency& f) { return f.lambda(); },
                    },
                    freq);
}

FrequencySpec FrequencySpec::parse(const std::string& text) {
  FrequencySpec spec;
  if (text == "poisson") return spec;
  if (text == "normal") {
    spec.kind = Kind::kNormalApprox;
    return spec;
  }
  const std::string prefix = "negbin:";
  if (text.rfind(prefix, 0) == 0) {
    spec.kind = Kind::kNegativeBinomial;
    try {
      std::size_t used = 0;
      const std::string number = text.substr(prefix.size());
      spec.dispersion = std::stod(number, &used);
      require(used == number.size(), "bad dispersion");
    } catch (const std::exception&) {
      thintail::detail::domain_fail("frequency: cannot parse dispersion in '" + text + "'");
    }
    require(spec.dispersion > 0.0, "frequency: dispersion must be positive");
    return spec;
  }
  thintail::detail::domain_fail("frequency: unknown model '" + text +
                                "' (expected poisson, negbin:<dispersion> or normal)");
}

std::string FrequencySpec::to_string() const {
  switch (kind) {
    case Kind::kPoisson:
      return "poisson";
    case Kind::kNormalApprox:
      return "normal";
    case Kind::kNegativeBinomial: {
      std::ostringstream os;
      os << "negbin:" << dispersion;
      return os.str();
    }
  }
  return "poisson";
}

FrequencyModel FrequencySpec::build(double lambda) const {
  switch (kind) {
    case Kind::kNegativeBinomial:
      return NegativeBinomialFrequency(lambda, dispersion);
    case Kind::kNormalApprox:
      return NormalApproxFrequency(lambda);
    case Kind::kPoisson:
      break;
  }
  return PoissonFrequency(lambda);
}

double annual_frequency(std::int64_t loss_count, double years) {
  require(loss_count >= 1, "annual_frequency: need at least one loss");
  require(std::isfinite(years) && years > 0.0, "annual_frequency: years must be positive");
  return static_cast<double>(loss_count) / years;
}

}  // namespace thintail::lda
