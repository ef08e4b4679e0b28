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

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>

#include "internal.hpp"

namespace thintail::cli {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

std::string number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

Json make_manifest(const Options& opts) {
  Json m;
  m["command"] = opts.command;
  m["inputs"] = Json::array();
  if (!opts.input.empty()) {
    m["inputs"].push_back(std::filesystem::absolute(opts.input).lexically_normal().string());
  }
  Json c;
  c["mode"] = opts.mode;
  c["span_years"] = opts.span_years ? Json(*opts.span_years) : Json(nullptr);
  c["seed"] = opts.seed;
  c["trials"] = opts.trials;
  c["percentile"] = opts.percentile;
  c["power"] = opts.power;
  c["freq"] = opts.freq;
  c["models"] = opts.models;
  c["powers"] = opts.powers;
  c["with_capital"] = opts.with_capital;
  c["model"] = opts.model;
  c["scale"] = opts.scale ? Json(*opts.scale) : Json(nullptr);
  c["points"] = opts.points;
  c["label"] = opts.label;
  c["permissive"] = opts.permissive;
  c["threads"] = opts.threads;
  m["config"] = std::move(c);
  m["tool_version"] = kToolVersion;
  m["timestamp"] = utc_timestamp();
  m["schemas"] = {{"report", kReportSchemaVersion}, {"csv", kCsvSchemaVersion}};
  return m;
}

Options options_from_manifest(const Json& doc) {
  const Json& m = doc.contains("manifest") ? doc.at("manifest") : doc;
  try {
    Options o;
    o.command = m.at("command").get<std::string>();
    const Json& inputs = m.at("inputs");
    if (!inputs.empty()) o.input = inputs.at(0).get<std::string>();
    const Json& c = m.at("config");
    o.mode = c.at("mode").get<std::string>();
    if (!c.at("span_years").is_null()) o.span_years = c.at("span_years").get<double>();
    o.seed = c.at("seed").get<std::uint64_t>();
    o.trials = c.at("trials").get<std::uint64_t>();
    o.percentile = c.at("percentile").get<double>();
    o.power = c.at("power").get<int>();
    o.freq = c.at("freq").get<std::string>();
    o.models = c.at("models").get<std::string>();
    o.powers = c.at("powers").get<std::string>();
    o.with_capital = c.at("with_capital").get<bool>();
    o.model = c.at("model").get<std::string>();
    if (!c.at("scale").is_null()) o.scale = c.at("scale").get<double>();
    o.points = c.at("points").get<int>();
    o.label = c.at("label").get<std::string>();
    o.permissive = c.at("permissive").get<bool>();
    o.threads = c.at("threads").get<unsigned>();
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace thintail::cli
