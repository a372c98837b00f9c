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

#ifndef STEPCOIN_TIMELINE_H_
#define STEPCOIN_TIMELINE_H_

#include <string>
#include <vector>

#include "stepcoin/annotation.h"
#include "stepcoin/consistency.h"
#include "stepcoin/lexicon.h"

namespace stepcoin {

// One horizontal row of a timeline: ground truth or a detection run.
struct TimelineLane {
  std::string label;
  std::vector<Segment> blocks;  // earlier entries are drawn on top
};

TimelineLane LaneFromDetections(std::string label,
                                const DetectionList& detections);
TimelineLane LaneFromAnnotation(std::string label,
                                const VideoAnnotation& annotation);

// Step colours and letters are assigned per step in order of first
// appearance across lanes, so identical lanes render identically. The
// lexicon, when given, supplies legend phrases.
std::string RenderTimelineSvg(double duration,
                              const std::vector<TimelineLane>& lanes,
                              const Lexicon* lexicon);

std::string RenderTimelineAscii(double duration,
                                const std::vector<TimelineLane>& lanes,
                                const Lexicon* lexicon, int width = 72);

}  // namespace stepcoin

#endif  // STEPCOIN_TIMELINE_H_
