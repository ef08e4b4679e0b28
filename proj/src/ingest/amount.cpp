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
#include <cmath>
#include <cstdio>
#include <string>

#include "thintail/error.hpp"
#include "thintail/ingest.hpp"

namespace thintail::ingest {
namespace {

constexpr std::size_t kMaxIntegerDigits = 24;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

Amount Amount::parse(std::string_view text) {
  const std::string shown(text);
  if (text.empty()) throw ParseError("empty amount", 0);
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    ++i;
  }
  __int128 whole = 0;
  std::size_t int_digits = 0;
  for (; i < text.size() && is_digit(text[i]); ++i, ++int_digits) {
    whole = whole * 10 + (text[i] - '0');
  }
  __int128 frac = 0;
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && is_digit(text[i]); ++i) {
      const int d = text[i] - '0';
      if (frac_digits < static_cast<std::size_t>(kDecimals)) {
        frac = frac * 10 + d;
        ++frac_digits;
      } else if (d != 0) {
        throw ParseError("amount '" + shown + "' has more than 12 decimals", 0);
      }
    }
    if (int_digits == 0 && frac_digits == 0) throw ParseError("malformed amount '" + shown + "'", 0);
  }
  if (i != text.size() || (int_digits == 0 && frac_digits == 0)) {
    throw ParseError("malformed amount '" + shown + "'", 0);
  }
  if (int_digits > kMaxIntegerDigits) throw ParseError("amount '" + shown + "' out of range", 0);
  for (std::size_t k = frac_digits; k < static_cast<std::size_t>(kDecimals); ++k) frac *= 10;
  const __int128 units = whole * kUnitsPerMeur + frac;
  return Amount(negative ? -units : units);
}

Amount Amount::from_double(double value) {
  thintail::detail::require(std::isfinite(value), "amount must be finite");
  std::array<char, 400> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, kDecimals);
  thintail::detail::require(res.ec == std::errc(), "amount out of range");
  return parse(std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data())));
}

double Amount::to_double() const noexcept {
  const std::string text = to_string();
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

std::string Amount::to_string() const {
  __int128 u = units_ < 0 ? -units_ : units_;
  __int128 whole = u / kUnitsPerMeur;
  std::int64_t frac = static_cast<std::int64_t>(u % kUnitsPerMeur);

  std::string digits;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(whole % 10)));
    whole /= 10;
  } while (whole > 0);
  std::string out = units_ < 0 ? "-" + digits : digits;
  if (frac != 0) {
    std::string f(kDecimals, '0');
    for (int k = kDecimals - 1; k >= 0; --k) {
      f[static_cast<std::size_t>(k)] = static_cast<char>('0' + frac % 10);
      frac /= 10;
    }
    f.erase(f.find_last_not_of('0') + 1);
    out += "." + f;
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, 7> kCategoryNames = {"IF",  "EF",   "EPWS", "CPBP",
                                                            "DPA", "BDSF", "EDPM"};

}  // namespace

BaselCategory parse_category(std::string_view text) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == text) return static_cast<BaselCategory>(i);
  }
  throw ParseError("unknown category '" + std::string(text) +
                       "' (expected IF, EF, EPWS, CPBP, DPA, BDSF or EDPM)",
                   0);
}

std::string_view to_string(BaselCategory c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::chrono::year_month_day parse_date(std::string_view text) {
  const auto bad = [&] { return ParseError("malformed date '" + std::string(text) + "'", 0); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  const char* s = text.data();
  if (std::from_chars(s, s + 4, y).ptr != s + 4) throw bad();
  if (std::from_chars(s + 5, s + 7, m).ptr != s + 7) throw bad();
  if (std::from_chars(s + 8, s + 10, d).ptr != s + 10) throw bad();
  const std::chrono::year_month_day date{std::chrono::year(y), std::chrono::month(m),
                                         std::chrono::day(d)};
  if (!date.ok()) throw bad();
  return date;
}

std::string format_date(std::chrono::year_month_day date) {
  std::array<char, 16> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf.data();
}

}  // namespace thintail::ingest
