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
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "internal.hpp"
#include "thintail/error.hpp"
#include "thintail/ingest.hpp"
#include "thintail/lda.hpp"

namespace thintail::cli {
namespace {

const std::set<std::string> kCommands = {"fit", "gof", "capital", "compare", "curve", "density"};

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("cannot parse " + what + " '" + text + "'");
}

template <typename F>
void as_usage(F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

std::vector<int> parse_powers(const std::string& text, std::vector<int>& skipped) {
  std::set<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const std::size_t dots = item.find("..");
    int lo = 0;
    int hi = 0;
    if (dots == std::string::npos) {
      lo = hi = parse_int(item, "power");
    } else {
      lo = parse_int(item.substr(0, dots), "power range start");
      hi = parse_int(item.substr(dots + 2), "power range end");
      if (lo > hi) throw UsageError("empty power range '" + item + "'");
    }
    if (lo < 1) throw UsageError("powers must be >= 1");
    for (int n = lo; n <= hi; ++n) values.insert(n);
  }
  if (values.empty()) throw UsageError("empty power list");
  std::vector<int> out;
  skipped.clear();
  for (int n : values) (n % 2 == 0 ? out : skipped).push_back(n);
  if (out.empty()) throw UsageError("no even powers in '" + text + "'");
  return out;
}

void Options::validate() const {
  if (kCommands.count(command) == 0) throw UsageError("unknown command '" + command + "'");
  if (input.empty()) throw UsageError("--input is required");
  as_usage([&] { ingest::AggregationMode::parse(mode); });
  if (span_years && !(std::isfinite(*span_years) && *span_years > 0.0)) {
    throw UsageError("--span-years must be > 0");
  }
  if (trials < lda::kMinTrials) {
    throw UsageError("--trials " + std::to_string(trials) + " is below the floor of " +
                     std::to_string(lda::kMinTrials));
  }
  if (!(percentile > 0.0 && percentile < 1.0)) throw UsageError("--percentile must be in (0, 1)");
  if (power < 1) throw UsageError("--power must be >= 1");
  if (points < 2) throw UsageError("--points must be >= 2");
  if (scale && !(std::isfinite(*scale) && *scale > 0.0)) throw UsageError("--scale must be > 0");
  as_usage([&] { lda::FrequencySpec::parse(freq); });
  if (command == "compare") as_usage([&] { lda::ModelSpec::parse_list(models); });
  if (command == "gof" || command == "density") as_usage([&] { lda::ModelSpec::parse(model); });
  if (command == "curve") {
    std::vector<int> skipped;
    parse_powers(powers, skipped);
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"thintail: thin-tailed severity fitting and LDA capital"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Options o;
  double span = 0.0;
  double scale = 0.0;
  std::string manifest_path;
  std::string replay_out;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "Loss CSV file")->required();
    sub->add_option("--span-years", span, "Observation span in years (default: from dates)");
    sub->add_option("--mode", o.mode, "Aggregation: pre, event, period:month|quarter|year")
        ->capture_default_str();
    sub->add_option("--out-dir", o.out_dir, "Directory for reports")->capture_default_str();
    sub->add_option("--label", o.label, "Dataset label (default: file stem)");
    sub->add_flag("--permissive", o.permissive, "Ignore unknown CSV columns");
    sub->add_option("--threads", o.threads, "Worker threads (0: all)")->capture_default_str();
  };
  auto simulation = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
    sub->add_option("--percentile", o.percentile, "Capital percentile")->capture_default_str();
    sub->add_option("--freq", o.freq, "Frequency: poisson, negbin:<d>, normal")
        ->capture_default_str();
  };

  CLI::App* fit = app.add_subcommand("fit", "Fit Exp4/ExpN by TN-A area minimization");
  common(fit);
  fit->add_option("--power", o.power, "ExpN power n")->capture_default_str();

  CLI::App* gof = app.add_subcommand("gof", "TN-A goodness of fit against a model");
  common(gof);
  gof->add_option("--model", o.model, "exp4, expn:<n>, normal, lognormal")->capture_default_str();
  gof->add_option("--scale", scale, "Fixed Exp4/ExpN scale in mEUR (default: fitted)");

  CLI::App* capital = app.add_subcommand("capital", "LDA capital for the fitted ExpN");
  common(capital);
  simulation(capital);
  capital->add_option("--power", o.power, "ExpN power n")->capture_default_str();

  CLI::App* compare = app.add_subcommand("compare", "Capital under several severity models");
  common(compare);
  simulation(compare);
  compare->add_option("--models", o.models, "Comma-separated models")->capture_default_str();

  CLI::App* curve = app.add_subcommand("curve", "Fitted ExpN 99.9% quantile against n");
  common(curve);
  simulation(curve);
  curve->add_option("--powers", o.powers, "Even powers, e.g. 4..20 or 4,8,12")
      ->capture_default_str();
  curve->add_flag("--with-capital", o.with_capital, "Add an LDA capital column");

  CLI::App* density = app.add_subcommand("density", "Fitted and empirical density on a grid");
  common(density);
  density->add_option("--model", o.model, "exp4, expn:<n>, normal, lognormal")
      ->capture_default_str();
  density->add_option("--points", o.points, "Grid points")->capture_default_str();

  CLI::App* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("--manifest", manifest_path, "Report or manifest JSON")->required();
  replay->add_option("--out-dir", replay_out, "Directory for reports (default: .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == replay) {
    std::ifstream in(manifest_path);
    if (!in) {
      err << "error: cannot open '" << manifest_path << "'\n";
      return kExitError;
    }
    Options r;
    try {
      r = options_from_manifest(Json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    r.out_dir = replay_out.empty() ? "." : replay_out;
    return run(r, out, err);
  }

  o.command = chosen->get_name();
  if (chosen->count("--span-years") > 0) o.span_years = span;
  if (chosen == gof && chosen->count("--scale") > 0) o.scale = scale;
  return run(o, out, err);
}

}  // namespace thintail::cli
