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

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "thintail/error.hpp"
#include "thintail/ingest.hpp"

namespace thintail::ingest {
namespace {

bool blank(std::string_view line) { return line.find_first_not_of(" \t") == std::string_view::npos; }

// getline that strips a trailing CR and, on the first line, a UTF-8 BOM.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  return true;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename F>
auto at_line(std::size_t line_no, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    if (e.line() != 0) throw;
    throw ParseError(e.what(), line_no);
  }
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (was_quoted) {
      throw ParseError("unexpected character after closing quote", line_no);
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(std::move(field));
  return fields;
}

std::vector<LossRecord> parse_csv(std::istream& in, const ParseOptions& opts) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError("empty input: missing header row", 0);
  const std::vector<std::string> header = split_csv_line(line, line_no);

  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::size_t col_amount = kAbsent, col_date = kAbsent, col_event = kAbsent, col_cat = kAbsent;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::size_t* slot = nullptr;
    if (header[i] == "amount") slot = &col_amount;
    else if (header[i] == "date") slot = &col_date;
    else if (header[i] == "event_id") slot = &col_event;
    else if (header[i] == "category") slot = &col_cat;
    if (slot == nullptr) {
      if (opts.permissive) continue;
      throw ParseError("unknown column '" + header[i] + "'", line_no);
    }
    if (*slot != kAbsent) throw ParseError("duplicate column '" + header[i] + "'", line_no);
    *slot = i;
  }
  if (col_amount == kAbsent || col_date == kAbsent) {
    throw ParseError("header must contain 'amount' and 'date' columns", line_no);
  }

  std::vector<LossRecord> records;
  while (next_line(in, line, line_no)) {
    if (blank(line)) continue;
    const std::vector<std::string> fields = split_csv_line(line, line_no);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    LossRecord rec;
    rec.amount = at_line(line_no, [&] { return Amount::parse(fields[col_amount]); });
    if (rec.amount <= Amount()) {
      throw ParseError("amount must be > 0, got '" + fields[col_amount] + "'", line_no);
    }
    rec.date = at_line(line_no, [&] { return parse_date(fields[col_date]); });
    if (col_event != kAbsent && !fields[col_event].empty()) rec.event_id = fields[col_event];
    if (col_cat != kAbsent && !fields[col_cat].empty()) {
      rec.category = at_line(line_no, [&] { return parse_category(fields[col_cat]); });
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<LossRecord> parse_csv_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_csv(in, opts);
}

void write_csv(std::ostream& out, std::span<const LossRecord> records) {
  out << "amount,date,event_id,category\n";
  for (const LossRecord& r : records) {
    out << r.amount.to_string() << ',' << format_date(r.date) << ','
        << (r.event_id ? quote(*r.event_id) : "") << ','
        << (r.category ? to_string(*r.category) : "") << '\n';
  }
}

std::vector<Amount> parse_amount_column(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Amount> out;
  bool first = true;
  while (next_line(in, line, line_no)) {
    if (blank(line)) continue;
    const std::vector<std::string> fields = split_csv_line(line, line_no);
    if (fields.size() != 1) {
      throw ParseError("expected a single column of losses", line_no);
    }
    if (first && (fields[0] == "amount" || fields[0] == "loss")) {
      first = false;
      continue;
    }
    first = false;
    const Amount a = at_line(line_no, [&] { return Amount::parse(fields[0]); });
    if (a <= Amount()) throw ParseError("amount must be > 0, got '" + fields[0] + "'", line_no);
    out.push_back(a);
  }
  return out;
}

Table read_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Table t;
  if (!next_line(in, line, line_no)) throw ParseError("empty input: missing header row", 0);
  t.header = split_csv_line(line, line_no);
  while (next_line(in, line, line_no)) {
    if (blank(line)) continue;
    auto fields = split_csv_line(line, line_no);
    if (fields.size() != t.header.size()) {
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    t.rows.push_back(std::move(fields));
  }
  return t;
}

}  // namespace thintail::ingest
