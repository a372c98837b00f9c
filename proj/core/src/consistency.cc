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

#include "stepcoin/consistency.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "stepcoin/error.h"

namespace stepcoin {

bool RanksBefore(const Detection& a, const Detection& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.interval.start != b.interval.start) {
    return a.interval.start < b.interval.start;
  }
  if (a.step_id != b.step_id) return a.step_id < b.step_id;
  return a.interval.end < b.interval.end;
}

void SortByRank(DetectionList& detections) {
  std::stable_sort(detections.begin(), detections.end(), RanksBefore);
}

VideoScore AggregateScores(const ProposalSet& proposals) {
  if (proposals.proposals.empty()) {
    Throw(ErrorCode::kEmptyProposalSet,
          "video '" + proposals.video_id + "' has no proposals");
  }
  const size_t k = proposals.proposals.front().scores.size();
  VideoScore out{std::vector<double>(k, 0.0)};
  for (const Proposal& p : proposals.proposals) {
    if (p.scores.size() != k) {
      Throw(ErrorCode::kDimensionMismatch,
            "video '" + proposals.video_id + "': ragged score vectors");
    }
    for (size_t i = 0; i < k; ++i) out.values[i] += p.scores[i];
  }
  return out;
}

TaskScore PredictTask(const VideoScore& video_score, const StepTaskMatrix& w) {
  if (static_cast<int>(video_score.values.size()) != w.num_steps()) {
    Throw(ErrorCode::kDimensionMismatch,
          "video score has " + std::to_string(video_score.values.size()) +
              " entries, incidence matrix has " +
              std::to_string(w.num_steps()) + " rows");
  }
  TaskScore out{std::vector<double>(w.num_tasks(), 0.0), 0};
  for (int i = 0; i < w.num_steps(); ++i) {
    const double s = video_score.values[i];
    for (int j = 0; j < w.num_tasks(); ++j) {
      if (w.at(i, j)) out.values[j] += s;
    }
  }
  for (int j = 1; j < w.num_tasks(); ++j) {
    if (out.values[j] > out.values[out.predicted_task]) out.predicted_task = j;
  }
  return out;
}

RefinedMask RefineMask(const StepTaskMatrix& w, int task, double gamma) {
  if (task < 0 || task >= w.num_tasks()) {
    Throw(ErrorCode::kUnknownTask, "unknown task id " + std::to_string(task));
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    Throw(ErrorCode::kInvalidGamma,
          "gamma must lie in (0, 1), got " + std::to_string(gamma));
  }
  RefinedMask mask{std::vector<double>(w.num_steps()), gamma};
  for (int i = 0; i < w.num_steps(); ++i) {
    // v + gamma * (1 - v) with v binary collapses to exactly 1 or gamma.
    mask.values[i] = w.at(i, task) ? 1.0 : gamma;
  }
  return mask;
}

ProposalSet RefineScores(const ProposalSet& proposals, const RefinedMask& mask) {
  ProposalSet out{proposals.video_id, {}};
  out.proposals.reserve(proposals.proposals.size());
  for (const Proposal& p : proposals.proposals) {
    if (p.scores.size() != mask.values.size()) {
      Throw(ErrorCode::kDimensionMismatch,
            "proposal has " + std::to_string(p.scores.size()) +
                " scores, mask has " + std::to_string(mask.values.size()));
    }
    Proposal refined{p.interval, std::vector<double>(p.scores.size())};
    for (size_t k = 0; k < p.scores.size(); ++k) {
      refined.scores[k] = p.scores[k] * mask.values[k];
    }
    out.proposals.push_back(std::move(refined));
  }
  return out;
}

DetectionList Nms(DetectionList detections, double iou_threshold) {
  if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) {
    Throw(ErrorCode::kInvalidArgument, "NMS threshold must lie in [0, 1]");
  }
  SortByRank(detections);
  std::map<int, std::vector<Interval>> kept_by_class;
  DetectionList kept;
  for (const Detection& d : detections) {
    std::vector<Interval>& same_class = kept_by_class[d.step_id];
    const bool suppressed =
        std::any_of(same_class.begin(), same_class.end(),
                    [&](const Interval& k) {
                      return TemporalIou(k, d.interval) > iou_threshold;
                    });
    if (suppressed) continue;
    same_class.push_back(d.interval);
    kept.push_back(d);
  }
  return kept;
}

DetectionList ProposalsToDetections(const ProposalSet& proposals, int top_c) {
  if (top_c < 1) Throw(ErrorCode::kInvalidArgument, "top_c must be >= 1");
  DetectionList out;
  std::vector<int> order;
  for (const Proposal& p : proposals.proposals) {
    const int k = static_cast<int>(p.scores.size());
    const int c = std::min(top_c, k);
    order.resize(k);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + c, order.end(),
                      [&](int a, int b) {
                        if (p.scores[a] != p.scores[b]) {
                          return p.scores[a] > p.scores[b];
                        }
                        return a < b;
                      });
    for (int r = 0; r < c; ++r) {
      out.push_back({p.interval, order[r], p.scores[order[r]]});
    }
  }
  return out;
}

void ValidateLocalizationOptions(const LocalizationOptions& options) {
  if (!(options.gamma > 0.0 && options.gamma < 1.0)) {
    Throw(ErrorCode::kInvalidGamma,
          "gamma must lie in (0, 1), got " + std::to_string(options.gamma));
  }
  if (options.top_c < 1) Throw(ErrorCode::kInvalidArgument, "top_c must be >= 1");
  if (!(options.nms_threshold >= 0.0 && options.nms_threshold <= 1.0)) {
    Throw(ErrorCode::kInvalidArgument, "NMS threshold must lie in [0, 1]");
  }
}

LocalizationResult LocalizeSteps(const ProposalSet& proposals,
                                 const StepTaskMatrix& w,
                                 const LocalizationOptions& options) {
  ValidateLocalizationOptions(options);
  const VideoScore video_score = AggregateScores(proposals);
  const TaskScore task_score = PredictTask(video_score, w);
  const RefinedMask mask = RefineMask(w, task_score.predicted_task, options.gamma);
  const ProposalSet refined = RefineScores(proposals, mask);
  return {task_score.predicted_task,
          Nms(ProposalsToDetections(refined, options.top_c),
              options.nms_threshold)};
}

DetectionList LocalizeStepsUnrefined(const ProposalSet& proposals,
                                     const LocalizationOptions& options) {
  ValidateLocalizationOptions(options);
  return Nms(ProposalsToDetections(proposals, options.top_c),
             options.nms_threshold);
}

}  // namespace stepcoin
