// Copyright 2026 The stepcoin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEPCOIN_SRC_JSON_UTIL_H_
#define STEPCOIN_SRC_JSON_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "stepcoin/error.h"
#include "stepcoin/io.h"

namespace stepcoin::internal {

using Json = nlohmann::json;

// Parses text, mapping any syntax error to Error(kParseError).
Json ParseJson(std::string_view text, std::string_view what);

// Required member access with kParseError on absence or wrong type.
const Json& Member(const Json& object, std::string_view key,
                   std::string_view context);
double GetNumber(const Json& object, std::string_view key,
                 std::string_view context);
int GetInt(const Json& object, std::string_view key, std::string_view context);
std::string GetString(const Json& object, std::string_view key,
                      std::string_view context);

// Checks the "format" tag of a versioned file.
void ExpectFormat(const Json& root, std::string_view format);

// Two-space indented, trailing newline. Key order is lexicographic so the
// output is byte-stable.
std::string Dump(const Json& value);

}  // namespace stepcoin::internal

#endif  // STEPCOIN_SRC_JSON_UTIL_H_
