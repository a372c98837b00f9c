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

#include "json_util.h"

#include <string>

namespace stepcoin::internal {

namespace {

std::string Where(std::string_view context, std::string_view key) {
  std::string out(context);
  if (!out.empty()) out += ": ";
  out += "field \"";
  out += key;
  out += "\"";
  return out;
}

}  // namespace

Json ParseJson(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    Throw(ErrorCode::kParseError,
          std::string(what) + ": malformed JSON: " + e.what());
  }
}

const Json& Member(const Json& object, std::string_view key,
                   std::string_view context) {
  if (!object.is_object()) {
    Throw(ErrorCode::kParseError, std::string(context) + ": expected object");
  }
  auto it = object.find(key);
  if (it == object.end()) {
    Throw(ErrorCode::kParseError, Where(context, key) + " is missing");
  }
  return *it;
}

double GetNumber(const Json& object, std::string_view key,
                 std::string_view context) {
  const Json& v = Member(object, key, context);
  if (!v.is_number()) {
    Throw(ErrorCode::kParseError, Where(context, key) + " must be a number");
  }
  return v.get<double>();
}

int GetInt(const Json& object, std::string_view key, std::string_view context) {
  const Json& v = Member(object, key, context);
  if (!v.is_number_integer()) {
    Throw(ErrorCode::kParseError, Where(context, key) + " must be an integer");
  }
  return v.get<int>();
}

std::string GetString(const Json& object, std::string_view key,
                      std::string_view context) {
  const Json& v = Member(object, key, context);
  if (!v.is_string()) {
    Throw(ErrorCode::kParseError, Where(context, key) + " must be a string");
  }
  return v.get<std::string>();
}

void ExpectFormat(const Json& root, std::string_view format) {
  const std::string got = GetString(root, "format", "file header");
  if (got != format) {
    Throw(ErrorCode::kParseError, "unsupported format \"" + got +
                                      "\", expected \"" + std::string(format) +
                                      "\"");
  }
}

std::string Dump(const Json& value) { return value.dump(2) + "\n"; }

}  // namespace stepcoin::internal
