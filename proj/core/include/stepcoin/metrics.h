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

#ifndef STEPCOIN_METRICS_H_
#define STEPCOIN_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "stepcoin/annotation.h"
#include "stepcoin/consistency.h"
#include "stepcoin/interval.h"
#include "stepcoin/lexicon.h"

namespace stepcoin {

inline const std::vector<double> kDefaultAlphas = {0.1, 0.2, 0.3, 0.4, 0.5};

struct EvalConfig {
  // IoU thresholds, strictly increasing, each in (0, 1].
  std::vector<double> alphas = kDefaultAlphas;
  // When positive, recall only considers each video's best-ranked
  // max_detections_per_video detections. Precision is never capped.
  int max_detections_per_video = 0;
  int num_threads = 1;
};

void ValidateEvalConfig(const EvalConfig& config);

// Greedy one-to-one matching for a single video. Detections are visited in
// rank order (score descending, earlier start first on ties); each takes the
// unmatched ground-truth segment of its own class with the highest IoU,
// provided that IoU >= alpha. The returned flags (true = TP) are aligned
// with the input order of `detections`.
std::vector<bool> MatchDetections(const DetectionList& detections,
                                  std::span<const Segment> ground_truth,
                                  double alpha);

// Area under the monotone precision envelope for TP flags listed in rank
// order, with num_ground_truth positives in total. Result in [0, 1].
double AveragePrecisionFromFlags(const std::vector<bool>& tp_in_rank_order,
                                 int num_ground_truth);

// Single-class, single-video AP. Throws kNoGroundTruth on empty ground truth.
double AveragePrecision(const DetectionList& detections,
                        std::span<const Segment> ground_truth, double alpha);

using DetectionsByVideo = std::map<std::string, DetectionList>;

struct ClassMetric {
  int step_id = 0;
  int num_ground_truth = 0;
  double value = 0.0;  // percent
};

// A mean over step classes with at least one ground-truth segment, plus the
// same mean restricted to the classes of each task and of each domain.
// Values are percentages.
struct MeanMetric {
  double mean = 0.0;
  std::vector<ClassMetric> per_class;
  std::map<int, double> per_task;
  std::map<int, double> per_domain;
};

// Detections and ground truth are pooled across videos per step class;
// matching never crosses videos. Throws kDimensionMismatch for detections
// whose step id is outside the lexicon.
MeanMetric MeanAp(const DetectionsByVideo& detections,
                  const std::vector<VideoAnnotation>& ground_truth,
                  double alpha, const Lexicon& lexicon, int num_threads = 1);

MeanMetric MeanAr(const DetectionsByVideo& detections,
                  const std::vector<VideoAnnotation>& ground_truth,
                  double alpha, const Lexicon& lexicon,
                  int max_detections_per_video = 0, int num_threads = 1);

struct ClassResult {
  int step_id = 0;
  int num_ground_truth = 0;
  double ap = 0.0;  // percent
  double ar = 0.0;  // percent
  friend bool operator==(const ClassResult&, const ClassResult&) = default;
};

struct AlphaResult {
  double alpha = 0.0;
  double map = 0.0;  // percent
  double mar = 0.0;  // percent
  std::vector<ClassResult> per_class;
  std::map<int, double> per_task;    // task id -> mAP
  std::map<int, double> per_domain;  // domain id -> mAP
  friend bool operator==(const AlphaResult&, const AlphaResult&) = default;
};

struct EvalReport {
  int num_videos = 0;
  int num_ground_truth = 0;
  int num_detections = 0;
  std::vector<AlphaResult> per_alpha;
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

EvalReport Evaluate(const DetectionsByVideo& detections,
                    const std::vector<VideoAnnotation>& ground_truth,
                    const Lexicon& lexicon, const EvalConfig& config = {});

// Fraction of frames whose predicted label equals the ground truth,
// background included. Throws kLengthMismatch when lengths or frame rates
// differ and kInvalidArgument when there are no frames.
double FrameAccuracy(const FrameLabelSequence& predicted,
                     const FrameLabelSequence& ground_truth);

// Frame accuracy pooled over many videos (matched by video id).
double FrameAccuracy(std::span<const FrameLabelSequence> predicted,
                     std::span<const FrameLabelSequence> ground_truth);

}  // namespace stepcoin

#endif  // STEPCOIN_METRICS_H_
