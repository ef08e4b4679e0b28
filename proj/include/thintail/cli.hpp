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

#ifndef THINTAIL_CLI_HPP_
#define THINTAIL_CLI_HPP_

// Command-line front end. Every command is callable in-process through run().

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thintail::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kCsvSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUsage = 2 };

// Bad flags or flag values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string input;
  std::optional<double> span_years;
  std::string mode = "pre";
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  double percentile = 0.999;
  int power = 4;
  std::string freq = "poisson";
  std::string models = "exp4,normal,expn:100";
  std::string powers = "4..20";
  bool with_capital = false;
  std::string model = "exp4";
  std::optional<double> scale;  // gof: fixed scale in mEUR instead of fitting
  int points = 200;
  std::string out_dir = ".";
  std::string label;
  bool permissive = false;
  unsigned threads = 0;

  // Checks flag values that do not depend on the data. Throws UsageError.
  void validate() const;
};

// "4..20", "4,6,8" or a mix. Odd entries are dropped and reported in skipped.
// Throws UsageError when nothing is left.
std::vector<int> parse_powers(const std::string& text, std::vector<int>& skipped);

// Runs a parsed command. Returns the exit code.
int run(const Options& opts, std::ostream& out, std::ostream& err);

// Full argv entry point, including "replay --manifest <file>".
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thintail::cli

#endif  // THINTAIL_CLI_HPP_
