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

#ifndef THINTAIL_SRC_CLI_INTERNAL_HPP_
#define THINTAIL_SRC_CLI_INTERNAL_HPP_

#include <string>

#include <json.hpp>

#include "thintail/cli.hpp"

namespace thintail::cli {

using Json = nlohmann::ordered_json;

std::string utc_timestamp();

// Manifest describing opts; input paths are made absolute.
Json make_manifest(const Options& opts);

// Accepts either a bare manifest or a report with a "manifest" member.
Options options_from_manifest(const Json& doc);

// Shortest text that reads back to the same double.
std::string number(double v);

}  // namespace thintail::cli

#endif  // THINTAIL_SRC_CLI_INTERNAL_HPP_
