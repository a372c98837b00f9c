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

#include "stepcoin/detection_io.h"

#include <cmath>
#include <utility>

#include "json_util.h"
#include "stepcoin/error.h"
#include "stepcoin/io.h"

namespace stepcoin {

using internal::Json;

std::vector<VideoDetections> LoadDetections(std::string_view json_text,
                                            int num_steps) {
  const Json root = internal::ParseJson(json_text, "detections");
  internal::ExpectFormat(root, kDetectionFormat);
  const Json& videos = internal::Member(root, "videos", "detections");
  if (!videos.is_object()) {
    Throw(ErrorCode::kParseError, "detections: \"videos\" must be an object");
  }
  std::vector<VideoDetections> out;
  for (const auto& [video_id, entry] : videos.items()) {
    const std::string context = "video '" + video_id + "'";
    VideoDetections v{video_id, std::nullopt, {}};
    if (auto it = entry.find("task_id"); it != entry.end() && !it->is_null()) {
      v.task_id = internal::GetInt(entry, "task_id", context);
    }
    const Json& list = internal::Member(entry, "detections", context);
    if (!list.is_array()) {
      Throw(ErrorCode::kParseError, context + ": detections must be an array");
    }
    for (size_t n = 0; n < list.size(); ++n) {
      const std::string where = context + " detection " + std::to_string(n);
      Detection d{{internal::GetNumber(list[n], "start", where),
                   internal::GetNumber(list[n], "end", where)},
                  internal::GetInt(list[n], "step_id", where),
                  internal::GetNumber(list[n], "score", where)};
      if (!std::isfinite(d.interval.start) || !std::isfinite(d.interval.end) ||
          !d.interval.IsValid()) {
        Throw(ErrorCode::kValidationError, where + ": invalid interval");
      }
      if (!std::isfinite(d.score) || d.score < 0.0) {
        Throw(ErrorCode::kValidationError, where + ": negative score");
      }
      if (d.step_id < 0 || d.step_id >= num_steps) {
        Throw(ErrorCode::kDimensionMismatch,
              where + ": step_id " + std::to_string(d.step_id) +
                  " outside [0, " + std::to_string(num_steps) + ")");
      }
      v.detections.push_back(d);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<VideoDetections> LoadDetectionsFile(
    const std::filesystem::path& path, int num_steps) {
  return LoadDetections(ReadFile(path), num_steps);
}

std::string SerializeDetections(const std::vector<VideoDetections>& videos) {
  Json by_id = Json::object();
  for (const VideoDetections& v : videos) {
    Json list = Json::array();
    for (const Detection& d : v.detections) {
      list.push_back({{"start", d.interval.start},
                      {"end", d.interval.end},
                      {"step_id", d.step_id},
                      {"score", d.score}});
    }
    by_id[v.video_id] = {{"task_id", v.task_id ? Json(*v.task_id) : Json()},
                         {"detections", std::move(list)}};
  }
  Json root = {{"format", std::string(kDetectionFormat)},
               {"videos", std::move(by_id)}};
  return internal::Dump(root);
}

}  // namespace stepcoin
