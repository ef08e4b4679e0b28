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
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "internal.hpp"
#include "thintail/error.hpp"
#include "thintail/fit.hpp"
#include "thintail/ingest.hpp"
#include "thintail/lda.hpp"
#include "thintail/simd.hpp"
#include "thintail/tna.hpp"

namespace thintail::cli {
namespace {

namespace fs = std::filesystem;

struct Dataset {
  ingest::AggregatedLossSet set;
  bool span_known = true;
};

std::string fixed(double v, int digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
  return buf.data();
}

std::string general(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6g", v);
  return buf.data();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void row(std::ostream& out, const std::string& key, const std::string& value) {
  out << key;
  for (std::size_t i = key.size(); i < 16; ++i) out << ' ';
  out << value << '\n';
}

Dataset load(const Options& o) {
  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + o.input + "'", 0);
  std::string first;
  std::getline(in, first);
  if (!first.empty() && first.back() == '\r') first.pop_back();
  if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);
  const auto header = ingest::split_csv_line(first, 1);
  const bool record_file = header.size() > 1 ||
                           std::find(header.begin(), header.end(), "date") != header.end();
  in.clear();
  in.seekg(0);

  const ingest::AggregationMode mode = ingest::AggregationMode::parse(o.mode);
  const std::string label = o.label.empty() ? fs::path(o.input).stem().string() : o.label;
  Dataset d;
  if (record_file) {
    const auto records = ingest::parse_csv(in, {o.permissive});
    if (records.size() < 2) detail::domain_fail("need ≥ 2 losses");
    d.set = ingest::aggregate(records, mode, label);
    if (o.span_years) d.set.span_years = *o.span_years;
  } else {
    if (mode.kind != ingest::AggregationMode::Kind::kPreAggregated) {
      detail::domain_fail("mode '" + o.mode + "' needs a record file with amount,date columns");
    }
    const auto amounts = ingest::parse_amount_column(in);
    if (amounts.size() < 2) detail::domain_fail("need ≥ 2 losses");
    d.set = ingest::from_amounts(amounts, o.span_years.value_or(1.0), label);
    d.span_known = o.span_years.has_value();
  }
  if (d.set.losses.size() < 2) detail::domain_fail("need ≥ 2 losses");
  return d;
}

void need_span(const Dataset& d) {
  if (!d.span_known) {
    detail::domain_fail("--span-years is required for a one-column loss file");
  }
}

Json dataset_json(const Dataset& d) {
  const ingest::Summary s = ingest::summary(d.set);
  Json j;
  j["label"] = d.set.label;
  j["mode"] = d.set.mode.to_string();
  j["count"] = s.count;
  j["sum"] = s.sum;
  j["min"] = s.min;
  j["max"] = s.max;
  j["mean"] = s.mean;
  j["span_years"] = d.span_known ? Json(d.set.span_years) : Json(nullptr);
  return j;
}

Json tna_json(const tna::TnaResult& t) {
  Json j;
  j["area"] = t.area;
  j["n_points"] = t.n_points;
  j["crossings"] = t.crossings;
  j["attained_level"] = t.attained_level;
  j["decisions"] = Json::array();
  for (const tna::Decision& d : t.decisions) {
    j["decisions"].push_back(
        {{"level_percent", d.level_percent}, {"critical_value", d.critical_value},
         {"reject", d.reject}});
  }
  return j;
}

Json params_json(const SeverityModel& model) {
  Json j;
  j["family"] = model.family();
  j["scaling_mean"] = model.scaling_mean();
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Exp4Params>) {
          j["s"] = p.s();
        } else if constexpr (std::is_same_v<P, ExpNParams>) {
          j["s"] = p.s();
          j["n"] = p.n();
        } else if constexpr (std::is_same_v<P, BaselineParams>) {
          std::visit(
              [&](const auto& b) {
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<B, NormalParams> ||
                              std::is_same_v<B, LogNormalParams>) {
                  j["mu"] = b.mu();
                  j["sigma"] = b.sigma();
                }
              },
              p);
        }
      },
      model.params());
  return j;
}

Json fit_json(const fit::FitResult& f) {
  Json j;
  j["power"] = f.power;
  j["s_hat"] = f.s_hat;
  j["scaling_mean"] = f.scaling_mean;
  j["scale"] = f.scale_in_loss_units();
  j["evaluations"] = f.evaluations;
  j["converged"] = f.converged;
  j["warnings"] = Json::array();
  for (fit::FitWarning w : f.warnings) j["warnings"].push_back(fit::to_string(w));
  return j;
}

Json capital_json(const lda::CapitalResult& c, const std::string& freq) {
  Json j;
  j["capital"] = c.capital;
  j["lambda"] = c.lambda;
  j["frequency"] = freq;
  j["trials"] = c.trials;
  j["percentile"] = c.percentile;
  j["seed"] = c.seed;
  j["stderr"] = c.stderr_estimate;
  j["half_width"] = c.half_width;
  j["converged"] = c.converged;
  return j;
}

Json report(const Options& o, const char* kind) {
  Json j;
  j["schema"] = std::string("thintail.") + kind;
  j["schema_version"] = kReportSchemaVersion;
  j["manifest"] = make_manifest(o);
  return j;
}

fs::path write_file(const Options& o, const std::string& name, const std::string& body,
                    std::ostream& out) {
  fs::create_directories(o.out_dir);
  const fs::path path = fs::path(o.out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  f << body;
  f.close();
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "wrote " << path.string() << '\n';
  return path;
}

void write_json(const Options& o, const std::string& name, const Json& j, std::ostream& out) {
  write_file(o, name, j.dump(2) + "\n", out);
}

lda::LdaConfig lda_config(const Options& o) {
  lda::LdaConfig cfg;
  cfg.trials = o.trials;
  cfg.percentile = o.percentile;
  cfg.seed = o.seed;
  cfg.workers = o.threads;
  return cfg;
}

void print_dataset(const Dataset& d, std::ostream& out) {
  const ingest::Summary s = ingest::summary(d.set);
  row(out, "dataset", d.set.label);
  row(out, "losses", std::to_string(s.count) + " (min, max, mean) = " +
                         ingest::format_min_max_mean(s));
  row(out, "sum", fixed(s.sum, 1) + " mEUR");
  if (d.span_known) row(out, "span_years", fixed(d.set.span_years, 3));
}

void print_tna(const tna::TnaResult& t, std::ostream& out) {
  row(out, "tna_area", fixed(t.area, 6));
  row(out, "attained_level", fixed(t.attained_level, 4));
  for (const tna::Decision& d : t.decisions) {
    row(out, "at " + fixed(d.level_percent, 0) + "%",
        std::string(d.reject ? "reject" : "accept") + " (critical " +
            fixed(d.critical_value, 4) + ")");
  }
}

void warn_fit(const fit::FitResult& f, std::ostream& err) {
  for (fit::FitWarning w : f.warnings) err << "warning: fit: " << fit::to_string(w) << '\n';
}

std::string model_name(int power) {
  return power == 4 ? "Exp4" : "ExpN(n=" + std::to_string(power) + ")";
}

fit::FitResult fit_power(const Dataset& d, int power) {
  fit::FitConfig cfg;
  cfg.power = power;
  return fit::fit_expn(d.set.losses, cfg);
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
  const Dataset d = load(o);
  const fit::FitResult f = fit_power(d, o.power);
  print_dataset(d, out);
  row(out, "model", model_name(f.power));
  row(out, "s_hat", fixed(f.s_hat, 6) + " (mean-scaled)");
  row(out, "scaling_mean", fixed(f.scaling_mean, 4) + " mEUR");
  row(out, "scale", fixed(f.scale_in_loss_units(), 4) + " mEUR");
  print_tna(f.tna, out);
  warn_fit(f, err);

  Json j = report(o, "fit");
  j["dataset"] = dataset_json(d);
  j["fit"] = fit_json(f);
  j["tna"] = tna_json(f.tna);
  write_json(o, "fit.json", j, out);
  return kExitOk;
}

int cmd_gof(const Options& o, std::ostream& out, std::ostream& err) {
  const Dataset d = load(o);
  const lda::ModelSpec spec = lda::ModelSpec::parse(o.model);
  const bool power_family =
      spec.kind == lda::ModelSpec::Kind::kExp4 || spec.kind == lda::ModelSpec::Kind::kExpN;
  if (o.scale && !power_family) throw UsageError("--scale applies to exp4 and expn models only");

  std::optional<SeverityModel> model;
  std::optional<fit::FitResult> fitted;
  if (o.scale) {
    model = make_power_model(*o.scale, spec.power, 1.0);
  } else {
    lda::ModelOutcome m = lda::fit_model(d.set.losses, spec, {});
    model = m.model;
    fitted = m.fit;
  }
  const tna::TnaResult t = tna::tna_test(d.set.losses, *model);

  print_dataset(d, out);
  row(out, "model", spec.to_string() + (o.scale ? " (fixed scale)" : " (fitted)"));
  print_tna(t, out);
  if (fitted) warn_fit(*fitted, err);

  Json j = report(o, "gof");
  j["dataset"] = dataset_json(d);
  j["model"] = params_json(*model);
  if (fitted) j["fit"] = fit_json(*fitted);
  j["tna"] = tna_json(t);
  write_json(o, "gof.json", j, out);
  return kExitOk;
}

int cmd_capital(const Options& o, std::ostream& out, std::ostream& err) {
  const Dataset d = load(o);
  need_span(d);
  const fit::FitResult f = fit_power(d, o.power);
  const lda::FrequencySpec fspec = lda::FrequencySpec::parse(o.freq);
  const double lambda =
      lda::annual_frequency(static_cast<std::int64_t>(d.set.losses.size()), d.set.span_years);
  const lda::CapitalResult c = lda::run_lda(f.model(), fspec.build(lambda), lda_config(o));
  const ingest::Summary s = ingest::summary(d.set);

  out << "dataset,count,sum,capital,tna\n";
  out << csv_field(d.set.label) << ',' << s.count << ',' << fixed(s.sum, 1) << ','
      << fixed(c.capital, 1) << ',' << fixed(f.tna.area, 4) << '\n';
  row(out, "model", model_name(f.power) + ", " + fspec.to_string() + " lambda " +
                        fixed(c.lambda, 4));
  row(out, "percentile", general(c.percentile));
  row(out, "half_width", fixed(c.half_width, 2) + " mEUR (95%, batch means)");
  warn_fit(f, err);
  if (!c.converged) {
    err << "warning: capital: 95% half-width exceeds 1% of capital; increase --trials\n";
  }

  Json j = report(o, "capital");
  j["dataset"] = dataset_json(d);
  j["fit"] = fit_json(f);
  j["tna"] = tna_json(f.tna);
  j["capital"] = capital_json(c, fspec.to_string());
  write_json(o, "capital.json", j, out);
  return kExitOk;
}

std::vector<std::string> capital_columns(const std::vector<lda::ModelSpec>& specs) {
  std::map<std::string, int> kind_count;
  for (std::size_t i = 1; i < specs.size(); ++i) {
    const std::string s = specs[i].to_string();
    ++kind_count[s.substr(0, s.find(':'))];
  }
  std::vector<std::string> cols;
  for (std::size_t i = 1; i < specs.size(); ++i) {
    std::string s = specs[i].to_string();
    const std::string base = s.substr(0, s.find(':'));
    if (kind_count[base] == 1) {
      cols.push_back(base + "_capital");
    } else {
      s.erase(std::remove(s.begin(), s.end(), ':'), s.end());
      cols.push_back(s + "_capital");
    }
  }
  return cols;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const Dataset d = load(o);
  need_span(d);
  const std::vector<lda::ModelSpec> specs = lda::ModelSpec::parse_list(o.models);
  const lda::FrequencySpec fspec = lda::FrequencySpec::parse(o.freq);
  const lda::Comparison cmp = lda::compare_models(d.set.losses, d.set.span_years, specs,
                                                  lda_config(o), fspec, {}, d.set.label);
  const ingest::Summary s = ingest::summary(d.set);

  std::ostringstream csv;
  csv << "dataset,count,sum,capital,tna";
  for (const std::string& c : capital_columns(specs)) csv << ',' << c;
  csv << '\n';
  csv << csv_field(cmp.label) << ',' << s.count << ',' << number(s.sum) << ','
      << number(cmp.outcomes[0].capital.capital) << ',' << number(cmp.outcomes[0].tna_area);
  for (std::size_t i = 1; i < cmp.outcomes.size(); ++i) {
    csv << ',' << number(cmp.outcomes[i].capital.capital);
  }
  csv << '\n';
  out << csv.str();

  Json j = report(o, "compare");
  j["dataset"] = dataset_json(d);
  j["lambda"] = cmp.lambda;
  j["models"] = Json::array();
  for (const lda::ModelOutcome& m : cmp.outcomes) {
    Json mj;
    mj["model"] = m.spec.to_string();
    mj["params"] = params_json(m.model);
    if (m.fit) {
      mj["fit"] = fit_json(*m.fit);
      warn_fit(*m.fit, err);
    }
    mj["tna_area"] = m.tna_area;
    mj["capital"] = capital_json(m.capital, fspec.to_string());
    j["models"].push_back(std::move(mj));
  }
  write_file(o, "compare.csv", csv.str(), out);
  write_json(o, "compare.json", j, out);
  return kExitOk;
}

int cmd_curve(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<int> skipped;
  const std::vector<int> powers = parse_powers(o.powers, skipped);
  if (!skipped.empty()) {
    err << "warning: curve: skipping odd powers";
    for (int n : skipped) err << ' ' << n;
    err << " (ExpN uses even powers of x)\n";
  }
  const Dataset d = load(o);
  if (o.with_capital) need_span(d);
  const lda::FrequencySpec fspec = lda::FrequencySpec::parse(o.freq);
  const std::vector<lda::CurvePoint> curve = lda::percentile_vs_n(
      d.set.losses, d.set.span_years, powers, lda_config(o), o.with_capital, fspec);

  std::ostringstream csv;
  csv << (o.with_capital ? "n,q999,capital\n" : "n,q999\n");
  for (const lda::CurvePoint& p : curve) {
    csv << p.power << ',' << number(p.q999);
    if (p.capital) csv << ',' << number(*p.capital);
    csv << '\n';
  }
  out << csv.str();

  Json j = report(o, "curve");
  j["dataset"] = dataset_json(d);
  j["skipped_powers"] = skipped;
  j["points"] = Json::array();
  for (const lda::CurvePoint& p : curve) {
    Json pj{{"n", p.power}, {"s_hat", p.s_hat}, {"tna_area", p.tna_area}, {"q999", p.q999}};
    pj["capital"] = p.capital ? Json(*p.capital) : Json(nullptr);
    j["points"].push_back(std::move(pj));
  }
  write_file(o, "curve.csv", csv.str(), out);
  write_json(o, "curve.json", j, out);
  return kExitOk;
}

double silverman_bandwidth(std::span<const double> data) {
  const double n = static_cast<double>(data.size());
  double mean = 0.0;
  for (double v : data) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : data) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double iqr =
      lda::empirical_percentile(data, 0.75) - lda::empirical_percentile(data, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) spread = sd;
  if (!(spread > 0.0)) detail::domain_fail("density: losses have zero spread");
  return 0.9 * spread * std::pow(n, -0.2);
}

int cmd_density(const Options& o, std::ostream& out, std::ostream& err) {
  const Dataset d = load(o);
  const lda::ModelSpec spec = lda::ModelSpec::parse(o.model);
  const lda::ModelOutcome m = lda::fit_model(d.set.losses, spec, {});
  if (m.fit) warn_fit(*m.fit, err);
  const fit::ScaledLosses scaled = fit::scale_losses(d.set.losses);
  const double x_max = 1.2 * *std::max_element(scaled.scaled.begin(), scaled.scaled.end());
  const std::size_t points = static_cast<std::size_t>(o.points);

  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = x_max * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  const double h = silverman_bandwidth(scaled.scaled);
  std::vector<double> kde(points);
  const double norm =
      1.0 / (static_cast<double>(scaled.scaled.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  simd::active_kernels().gaussian_kernel_sum(grid, scaled.scaled, h, norm, kde);

  std::ostringstream csv;
  csv << "x,fit,empirical\n";
  for (std::size_t k = 0; k < points; ++k) {
    const double fitted = scaled.mean * m.model.pdf(grid[k] * scaled.mean);
    csv << number(grid[k]) << ',' << number(fitted) << ',' << number(kde[k]) << '\n';
  }

  Json j = report(o, "density");
  j["dataset"] = dataset_json(d);
  j["axis"] = "mean-scaled";
  j["scaling_mean"] = scaled.mean;
  j["model"] = params_json(m.model);
  j["bandwidth"] = h;
  j["points"] = points;
  print_dataset(d, out);
  row(out, "model", spec.to_string());
  row(out, "bandwidth", fixed(h, 6) + " (Silverman, mean-scaled)");
  write_file(o, "density.csv", csv.str(), out);
  write_json(o, "density.json", j, out);
  return kExitOk;
}

}  // namespace

int run(const Options& opts, std::ostream& out, std::ostream& err) {
  try {
    opts.validate();
    if (opts.command == "fit") return cmd_fit(opts, out, err);
    if (opts.command == "gof") return cmd_gof(opts, out, err);
    if (opts.command == "capital") return cmd_capital(opts, out, err);
    if (opts.command == "compare") return cmd_compare(opts, out, err);
    if (opts.command == "curve") return cmd_curve(opts, out, err);
    return cmd_density(opts, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace thintail::cli
