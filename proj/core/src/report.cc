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

#include "stepcoin/report.h"

#include <charconv>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "json_util.h"
#include "stepcoin/error.h"

namespace stepcoin {

using internal::Json;

namespace {

Json IdMap(const std::map<int, double>& values, const char* id_key) {
  Json out = Json::array();
  for (const auto& [id, v] : values) out.push_back({{id_key, id}, {"mAP", v}});
  return out;
}

std::map<int, double> ParseIdMap(const Json& list, const char* id_key) {
  if (!list.is_array()) {
    Throw(ErrorCode::kParseError, std::string("report: ") + id_key +
                                      " breakdown must be an array");
  }
  std::map<int, double> out;
  for (const Json& e : list) {
    out[internal::GetInt(e, id_key, "report")] =
        internal::GetNumber(e, "mAP", "report");
  }
  return out;
}

double ParseNumber(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Throw(ErrorCode::kParseError,
          "report table: bad number \"" + std::string(token) + "\"");
  }
  return value;
}

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string SerializeReport(const EvalReport& report) {
  Json per_alpha = Json::array();
  for (const AlphaResult& a : report.per_alpha) {
    Json classes = Json::array();
    for (const ClassResult& c : a.per_class) {
      classes.push_back({{"step_id", c.step_id},
                         {"num_gt", c.num_ground_truth},
                         {"AP", c.ap},
                         {"AR", c.ar}});
    }
    per_alpha.push_back({{"alpha", a.alpha},
                         {"mAP", a.map},
                         {"mAR", a.mar},
                         {"per_class", std::move(classes)},
                         {"per_task", IdMap(a.per_task, "task_id")},
                         {"per_domain", IdMap(a.per_domain, "domain_id")}});
  }
  Json root = {{"format", std::string(kReportFormat)},
               {"counts",
                {{"videos", report.num_videos},
                 {"gt_segments", report.num_ground_truth},
                 {"detections", report.num_detections}}},
               {"per_alpha", std::move(per_alpha)}};
  return internal::Dump(root);
}

EvalReport ParseReport(std::string_view json_text) {
  const Json root = internal::ParseJson(json_text, "report");
  internal::ExpectFormat(root, kReportFormat);
  EvalReport report;
  const Json& counts = internal::Member(root, "counts", "report");
  report.num_videos = internal::GetInt(counts, "videos", "report counts");
  report.num_ground_truth =
      internal::GetInt(counts, "gt_segments", "report counts");
  report.num_detections = internal::GetInt(counts, "detections", "report counts");
  const Json& per_alpha = internal::Member(root, "per_alpha", "report");
  if (!per_alpha.is_array()) {
    Throw(ErrorCode::kParseError, "report: per_alpha must be an array");
  }
  for (const Json& a : per_alpha) {
    AlphaResult result;
    result.alpha = internal::GetNumber(a, "alpha", "report");
    result.map = internal::GetNumber(a, "mAP", "report");
    result.mar = internal::GetNumber(a, "mAR", "report");
    const Json& classes = internal::Member(a, "per_class", "report");
    if (!classes.is_array()) {
      Throw(ErrorCode::kParseError, "report: per_class must be an array");
    }
    for (const Json& c : classes) {
      result.per_class.push_back({internal::GetInt(c, "step_id", "report"),
                                  internal::GetInt(c, "num_gt", "report"),
                                  internal::GetNumber(c, "AP", "report"),
                                  internal::GetNumber(c, "AR", "report")});
    }
    result.per_task =
        ParseIdMap(internal::Member(a, "per_task", "report"), "task_id");
    result.per_domain =
        ParseIdMap(internal::Member(a, "per_domain", "report"), "domain_id");
    report.per_alpha.push_back(std::move(result));
  }
  return report;
}

std::string FormatReportTable(const EvalReport& report) {
  std::string alpha_row = fmt::format("{:<8}", "alpha");
  std::string map_row = fmt::format("{:<8}", "mAP@a");
  std::string mar_row = fmt::format("{:<8}", "mAR@a");
  for (const AlphaResult& a : report.per_alpha) {
    alpha_row += fmt::format("{:>9.2f}", a.alpha);
    map_row += fmt::format("{:>9.2f}", a.map);
    mar_row += fmt::format("{:>9.2f}", a.mar);
  }
  return fmt::format("{}\n{}\n{}\n", alpha_row, map_row, mar_row);
}

std::vector<TableRow> ParseReportTable(std::string_view text) {
  std::vector<double> alphas, maps, mars;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto tokens = Tokens(line);
    if (tokens.empty()) continue;
    std::vector<double>* target = nullptr;
    if (tokens[0] == "alpha") target = &alphas;
    if (tokens[0] == "mAP@a") target = &maps;
    if (tokens[0] == "mAR@a") target = &mars;
    if (target == nullptr) continue;
    for (size_t i = 1; i < tokens.size(); ++i) {
      target->push_back(ParseNumber(tokens[i]));
    }
  }
  if (alphas.size() != maps.size() || alphas.size() != mars.size()) {
    Throw(ErrorCode::kParseError, "report table: ragged rows");
  }
  std::vector<TableRow> rows;
  for (size_t i = 0; i < alphas.size(); ++i) {
    rows.push_back({alphas[i], maps[i], mars[i]});
  }
  return rows;
}

}  // namespace stepcoin
