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
#include <map>
#include <string>

#include "thintail/error.hpp"
#include "thintail/ingest.hpp"

namespace thintail::ingest {
namespace {

using thintail::detail::domain_fail;
using thintail::detail::require;

std::string period_key(std::chrono::year_month_day date, AggregationMode::Period period) {
  const int y = static_cast<int>(date.year());
  const unsigned m = static_cast<unsigned>(date.month());
  std::array<char, 16> buf{};
  switch (period) {
    case AggregationMode::Period::kMonth:
      std::snprintf(buf.data(), buf.size(), "%04d-%02u", y, m);
      break;
    case AggregationMode::Period::kQuarter:
      std::snprintf(buf.data(), buf.size(), "%04d-Q%u", y, (m - 1) / 3 + 1);
      break;
    case AggregationMode::Period::kYear:
      std::snprintf(buf.data(), buf.size(), "%04d", y);
      break;
  }
  return buf.data();
}

}  // namespace

AggregationMode AggregationMode::parse(std::string_view text) {
  AggregationMode mode;
  if (text == "pre") return mode;
  if (text == "event") {
    mode.kind = Kind::kByEvent;
    return mode;
  }
  mode.kind = Kind::kByPeriod;
  if (text == "period:month") {
    mode.period = Period::kMonth;
  } else if (text == "period:quarter") {
    mode.period = Period::kQuarter;
  } else if (text == "period:year") {
    mode.period = Period::kYear;
  } else {
    domain_fail("unknown aggregation mode '" + std::string(text) +
                "' (expected pre, event, period:month|quarter|year)");
  }
  return mode;
}

std::string AggregationMode::to_string() const {
  switch (kind) {
    case Kind::kPreAggregated:
      return "pre";
    case Kind::kByEvent:
      return "event";
    case Kind::kByPeriod:
      break;
  }
  switch (period) {
    case Period::kMonth:
      return "period:month";
    case Period::kQuarter:
      return "period:quarter";
    case Period::kYear:
      break;
  }
  return "period:year";
}

double span_years(std::span<const LossRecord> records) {
  require(!records.empty(), "span_years: no records");
  const auto [lo, hi] = std::minmax_element(
      records.begin(), records.end(),
      [](const LossRecord& a, const LossRecord& b) { return a.date < b.date; });
  const auto days = (std::chrono::sys_days(hi->date) - std::chrono::sys_days(lo->date)).count();
  return std::max(static_cast<double>(days) / kDaysPerYear, 1.0 / 365.0);
}

AggregatedLossSet aggregate(std::span<const LossRecord> records, const AggregationMode& mode,
                            std::string label) {
  require(!records.empty(), "aggregate: no records");
  AggregatedLossSet out;
  out.label = std::move(label);
  out.mode = mode;
  out.span_years = span_years(records);

  if (mode.kind == AggregationMode::Kind::kPreAggregated) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      out.groups.push_back({std::to_string(i + 1), records[i].amount, 1});
      out.losses.push_back(records[i].amount.to_double());
    }
    return out;
  }

  std::map<std::string, AggregateGroup> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const LossRecord& r = records[i];
    std::string key;
    if (mode.kind == AggregationMode::Kind::kByEvent) {
      if (!r.event_id) {
        domain_fail("aggregate: record " + std::to_string(i + 1) +
                    " has no event_id (required for event mode)");
      }
      key = *r.event_id;
    } else {
      key = period_key(r.date, mode.period);
    }
    AggregateGroup& g = groups[key];
    g.key = key;
    g.total += r.amount;
    ++g.records;
  }
  for (auto& [key, g] : groups) {
    out.losses.push_back(g.total.to_double());
    out.groups.push_back(std::move(g));
  }
  return out;
}

AggregatedLossSet from_amounts(std::span<const Amount> amounts, double span_years,
                               std::string label) {
  require(!amounts.empty(), "no losses");
  require(std::isfinite(span_years) && span_years > 0.0, "span_years must be > 0");
  AggregatedLossSet out;
  out.label = std::move(label);
  out.span_years = span_years;
  for (std::size_t i = 0; i < amounts.size(); ++i) {
    out.groups.push_back({std::to_string(i + 1), amounts[i], 1});
    out.losses.push_back(amounts[i].to_double());
  }
  return out;
}

Summary summary(std::span<const double> losses) {
  require(!losses.empty(), "summary: no losses");
  Summary s;
  s.count = losses.size();
  s.min = losses[0];
  s.max = losses[0];
  double carry = 0.0;
  for (double v : losses) {
    const double t = s.sum + v;
    carry += std::abs(s.sum) >= std::abs(v) ? (s.sum - t) + v : (v - t) + s.sum;
    s.sum = t;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.sum += carry;
  s.mean = s.sum / static_cast<double>(s.count);
  return s;
}

Summary summary(const AggregatedLossSet& set) {
  Summary s = summary(set.losses);
  if (set.groups.size() == set.losses.size()) {
    Amount exact;
    for (const AggregateGroup& g : set.groups) exact += g.total;
    s.sum = exact.to_double();
    s.mean = s.sum / static_cast<double>(s.count);
  }
  return s;
}

std::string format_min_max_mean(const Summary& s) {
  std::array<char, 128> buf{};
  std::snprintf(buf.data(), buf.size(), "(%.1f, %.1f, %.1f)", s.min, s.max, s.mean);
  return buf.data();
}

}  // namespace thintail::ingest
