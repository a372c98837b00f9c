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

#ifndef STEPCOIN_DETECTION_IO_H_
#define STEPCOIN_DETECTION_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stepcoin/consistency.h"

namespace stepcoin {

inline constexpr std::string_view kDetectionFormat = "stepcoin-det-v1";

// Final detections for one video, as written by `stepcoin refine`.
struct VideoDetections {
  std::string video_id;
  std::optional<int> task_id;  // predicted task; absent without refinement
  DetectionList detections;    // rank order
  friend bool operator==(const VideoDetections&,
                         const VideoDetections&) = default;
};

// Throws kParseError, kValidationError (invalid interval, negative score) and
// kDimensionMismatch (step id outside [0, num_steps)).
std::vector<VideoDetections> LoadDetections(std::string_view json_text,
                                            int num_steps);
std::vector<VideoDetections> LoadDetectionsFile(
    const std::filesystem::path& path, int num_steps);
std::string SerializeDetections(const std::vector<VideoDetections>& videos);

}  // namespace stepcoin

#endif  // STEPCOIN_DETECTION_IO_H_
