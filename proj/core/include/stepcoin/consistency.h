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

#ifndef STEPCOIN_CONSISTENCY_H_
#define STEPCOIN_CONSISTENCY_H_

#include <cmath>
#include <span>
#include <vector>

#include "stepcoin/annotation.h"
#include "stepcoin/interval.h"
#include "stepcoin/lexicon.h"

namespace stepcoin {

// Task-consistency refinement of step proposals.
//
// Bottom-up, the per-proposal step scores of one video are summed into a
// video-level step score and projected onto tasks through the step-task
// incidence matrix; the best task is taken as the video's task. Top-down,
// every step outside that task has its proposal scores multiplied by an
// attenuation coefficient gamma, after which the proposals are turned into
// labelled detections and suppressed per class.

inline const double kDefaultGamma = std::exp(-2.0);
inline constexpr double kDefaultNmsThreshold = 0.4;
inline constexpr int kDefaultTopC = 1;

struct Detection {
  Interval interval;
  int step_id = 0;
  double score = 0.0;
  friend bool operator==(const Detection&, const Detection&) = default;
};

using DetectionList = std::vector<Detection>;

// Ranking order shared by NMS and evaluation: score descending, then earlier
// start, then lower step id, then earlier end.
bool RanksBefore(const Detection& a, const Detection& b);
void SortByRank(DetectionList& detections);

struct VideoScore {
  std::vector<double> values;  // K entries
};

struct TaskScore {
  std::vector<double> values;  // M entries
  int predicted_task = 0;
};

struct RefinedMask {
  std::vector<double> values;  // 1 for in-task steps, gamma elsewhere
  double gamma = 0.0;
};

// Element-wise sum of all proposal score vectors. Throws kEmptyProposalSet
// for N = 0.
VideoScore AggregateScores(const ProposalSet& proposals);

// Row vector times incidence matrix; argmax with ties to the lowest task id.
// Throws kDimensionMismatch.
TaskScore PredictTask(const VideoScore& video_score, const StepTaskMatrix& w);

// Column `task` of W, softened: v + gamma * (1 - v). Throws kUnknownTask
// and kInvalidGamma (gamma outside the open interval (0, 1)).
RefinedMask RefineMask(const StepTaskMatrix& w, int task, double gamma);

// Hadamard product of each proposal's scores with the mask; intervals are
// untouched. Throws kDimensionMismatch.
ProposalSet RefineScores(const ProposalSet& proposals, const RefinedMask& mask);

// Greedy per-class suppression: within each step class, a detection is
// dropped when its IoU with an already kept detection exceeds the
// threshold. Output is in rank order.
DetectionList Nms(DetectionList detections, double iou_threshold);

// Each proposal contributes its top_c highest-scoring steps (ties to the
// lower step id) as detections over the proposal's interval. top_c larger
// than K is clamped.
DetectionList ProposalsToDetections(const ProposalSet& proposals, int top_c);

struct LocalizationOptions {
  double gamma = kDefaultGamma;
  int top_c = kDefaultTopC;
  double nms_threshold = kDefaultNmsThreshold;
};

void ValidateLocalizationOptions(const LocalizationOptions& options);

struct LocalizationResult {
  int task = 0;
  DetectionList detections;
};

// Full pipeline: aggregate, predict task, refine, flatten, NMS.
LocalizationResult LocalizeSteps(const ProposalSet& proposals,
                                 const StepTaskMatrix& w,
                                 const LocalizationOptions& options = {});

// Baseline without refinement: flatten and NMS only. Empty input is allowed
// and yields no detections.
DetectionList LocalizeStepsUnrefined(const ProposalSet& proposals,
                                     const LocalizationOptions& options = {});

}  // namespace stepcoin

#endif  // STEPCOIN_CONSISTENCY_H_
