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

#ifndef THINTAIL_INGEST_HPP_
#define THINTAIL_INGEST_HPP_

// Loss-record ingestion, aggregation and summary statistics.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace thintail::ingest {

// Exact decimal amount in units of 1e-12 mEUR. Sums of these never round.
class Amount {
 public:
  static constexpr int kDecimals = 12;
  static constexpr std::int64_t kUnitsPerMeur = 1'000'000'000'000;

  constexpr Amount() = default;
  static constexpr Amount from_units(__int128 units) { return Amount(units); }

  // Plain decimal: [+-]digits[.digits]. At most 12 significant fractional digits.
  static Amount parse(std::string_view text);
  // Nearest representable amount.
  static Amount from_double(double value);

  __int128 units() const noexcept { return units_; }
  double to_double() const noexcept;
  // Shortest plain decimal that parses back to the same amount.
  std::string to_string() const;

  Amount& operator+=(Amount other) noexcept {
    units_ += other.units_;
    return *this;
  }
  friend Amount operator+(Amount a, Amount b) noexcept { return a += b; }
  friend constexpr auto operator<=>(Amount, Amount) = default;

 private:
  constexpr explicit Amount(__int128 units) : units_(units) {}
  __int128 units_ = 0;
};

enum class BaselCategory { kIF, kEF, kEPWS, kCPBP, kDPA, kBDSF, kEDPM };

BaselCategory parse_category(std::string_view text);
std::string_view to_string(BaselCategory c);

struct LossRecord {
  Amount amount;
  std::chrono::year_month_day date;
  std::optional<std::string> event_id;
  std::optional<BaselCategory> category;

  friend bool operator==(const LossRecord&, const LossRecord&) = default;
};

std::chrono::year_month_day parse_date(std::string_view text);
std::string format_date(std::chrono::year_month_day date);

struct ParseOptions {
  bool permissive = false;  // ignore unknown columns instead of rejecting them
};

// Header row amount,date[,event_id][,category]; errors carry the line number.
std::vector<LossRecord> parse_csv(std::istream& in, const ParseOptions& opts = {});
std::vector<LossRecord> parse_csv_file(const std::string& path, const ParseOptions& opts = {});
void write_csv(std::ostream& out, std::span<const LossRecord> records);

// One-column file of already aggregated losses. Header "amount" or "loss" is optional.
std::vector<Amount> parse_amount_column(std::istream& in);

// Generic CSV table: header plus rows of raw fields. Quoted fields are supported.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
Table read_table(std::istream& in);
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no = 0);

struct AggregationMode {
  enum class Kind { kPreAggregated, kByEvent, kByPeriod };
  enum class Period { kMonth, kQuarter, kYear };
  Kind kind = Kind::kPreAggregated;
  Period period = Period::kYear;

  // "pre", "event", "period:month", "period:quarter", "period:year".
  static AggregationMode parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const AggregationMode&, const AggregationMode&) = default;
};

struct AggregateGroup {
  std::string key;
  Amount total;
  std::size_t records = 0;
};

struct AggregatedLossSet {
  std::vector<double> losses;  // mEUR, ordered by group key
  double span_years = 0.0;
  std::string label;
  AggregationMode mode;
  std::vector<AggregateGroup> groups;
};

inline constexpr double kDaysPerYear = 365.25;

// Years between the earliest and latest record, floored at one day.
double span_years(std::span<const LossRecord> records);

// Pre-aggregated mode keeps each record as one loss.
AggregatedLossSet aggregate(std::span<const LossRecord> records, const AggregationMode& mode,
                            std::string label = "");

AggregatedLossSet from_amounts(std::span<const Amount> amounts, double span_years,
                               std::string label = "");

struct Summary {
  std::size_t count = 0;
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

Summary summary(std::span<const double> losses);
Summary summary(const AggregatedLossSet& set);

// "(min, max, mean)" with one decimal, e.g. "(0.1, 1208.0, 92.7)".
std::string format_min_max_mean(const Summary& s);

}  // namespace thintail::ingest

#endif  // THINTAIL_INGEST_HPP_
