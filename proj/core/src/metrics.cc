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

#include "stepcoin/metrics.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "stepcoin/error.h"
#include "stepcoin/parallel.h"

namespace stepcoin {

namespace {

// One step class, pooled over all videos. Detections are kept in rank order
// with the video index as the final tie-break, so the order does not depend
// on how the caller iterated videos.
struct ClassPool {
  struct Entry {
    int video = 0;
    Detection detection;
  };
  std::vector<Entry> detections;
  std::map<int, std::vector<Interval>> ground_truth_by_video;
  int num_ground_truth = 0;
};

// Greedy matching over one pooled class. Returns TP flags in rank order.
std::vector<bool> MatchPool(const ClassPool& pool, double alpha) {
  std::map<int, std::vector<bool>> used;
  for (const auto& [video, gts] : pool.ground_truth_by_video) {
    used[video].assign(gts.size(), false);
  }
  std::vector<bool> flags(pool.detections.size(), false);
  for (size_t r = 0; r < pool.detections.size(); ++r) {
    const ClassPool::Entry& e = pool.detections[r];
    auto it = pool.ground_truth_by_video.find(e.video);
    if (it == pool.ground_truth_by_video.end()) continue;
    const std::vector<Interval>& gts = it->second;
    std::vector<bool>& taken = used[e.video];
    int best = -1;
    double best_iou = -1.0;
    for (size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double iou = TemporalIou(e.detection.interval, gts[g]);
      if (iou >= alpha && iou > best_iou) {
        best = static_cast<int>(g);
        best_iou = iou;
      }
    }
    if (best >= 0) {
      taken[best] = true;
      flags[r] = true;
    }
  }
  return flags;
}

int CountTrue(const std::vector<bool>& flags) {
  return static_cast<int>(std::count(flags.begin(), flags.end(), true));
}

std::vector<DetectionList> CapPerVideo(const DetectionsByVideo& detections,
                                       int cap) {
  std::vector<DetectionList> out;
  out.reserve(detections.size());
  for (const auto& [id, list] : detections) {
    DetectionList sorted = list;
    SortByRank(sorted);
    if (cap > 0 && static_cast<int>(sorted.size()) > cap) sorted.resize(cap);
    out.push_back(std::move(sorted));
  }
  return out;
}

std::vector<ClassPool> BuildPools(const DetectionsByVideo& detections,
                                  const std::vector<VideoAnnotation>& gts,
                                  const Lexicon& lexicon, int cap) {
  const int k = lexicon.num_steps();
  std::map<std::string, int> video_index;
  for (const auto& [id, list] : detections) video_index.emplace(id, 0);
  for (const VideoAnnotation& v : gts) video_index.emplace(v.video_id, 0);
  int next = 0;
  for (auto& [id, index] : video_index) index = next++;

  std::vector<ClassPool> pools(k);
  for (const VideoAnnotation& v : gts) {
    const int vi = video_index.at(v.video_id);
    for (const Segment& s : v.segments) {
      if (!lexicon.HasStep(s.step_id)) {
        Throw(ErrorCode::kDimensionMismatch,
              "ground truth step " + std::to_string(s.step_id) +
                  " outside lexicon");
      }
      pools[s.step_id].ground_truth_by_video[vi].push_back(s.interval);
      ++pools[s.step_id].num_ground_truth;
    }
  }
  for (auto& pool : pools) {
    for (auto& [vi, list] : pool.ground_truth_by_video) {
      std::stable_sort(list.begin(), list.end(),
                       [](const Interval& a, const Interval& b) {
                         return a.start < b.start;
                       });
    }
  }

  const std::vector<DetectionList> capped = CapPerVideo(detections, cap);
  size_t i = 0;
  for (const auto& [id, unused] : detections) {
    const int vi = video_index.at(id);
    for (const Detection& d : capped[i]) {
      if (d.step_id < 0 || d.step_id >= k) {
        Throw(ErrorCode::kDimensionMismatch,
              "video '" + id + "': detection step " +
                  std::to_string(d.step_id) + " outside lexicon of " +
                  std::to_string(k) + " steps");
      }
      pools[d.step_id].detections.push_back({vi, d});
    }
    ++i;
  }
  for (auto& pool : pools) {
    std::stable_sort(pool.detections.begin(), pool.detections.end(),
                     [](const ClassPool::Entry& a, const ClassPool::Entry& b) {
                       if (RanksBefore(a.detection, b.detection)) return true;
                       if (RanksBefore(b.detection, a.detection)) return false;
                       return a.video < b.video;
                     });
  }
  return pools;
}

// Fills per_task / per_domain / mean from per_class.
void Aggregate(const Lexicon& lexicon, MeanMetric& metric) {
  std::map<int, std::pair<double, int>> by_task;
  std::map<int, std::pair<double, int>> by_domain;
  double total = 0.0;
  for (const ClassMetric& c : metric.per_class) {
    total += c.value;
    const int task = lexicon.TaskOfStep(c.step_id);
    auto& t = by_task[task];
    t.first += c.value;
    ++t.second;
    auto& d = by_domain[lexicon.DomainOfTask(task)];
    d.first += c.value;
    ++d.second;
  }
  metric.mean = metric.per_class.empty()
                    ? 0.0
                    : total / static_cast<double>(metric.per_class.size());
  for (const auto& [id, acc] : by_task) metric.per_task[id] = acc.first / acc.second;
  for (const auto& [id, acc] : by_domain) {
    metric.per_domain[id] = acc.first / acc.second;
  }
}

enum class Measure { kPrecision, kRecall };

MeanMetric ComputeMean(const std::vector<ClassPool>& pools, double alpha,
                       const Lexicon& lexicon, Measure measure,
                       int num_threads) {
  std::vector<double> values(pools.size(), 0.0);
  ParallelFor(pools.size(), num_threads, [&](size_t c) {
    const ClassPool& pool = pools[c];
    if (pool.num_ground_truth == 0) return;
    const std::vector<bool> flags = MatchPool(pool, alpha);
    values[c] = measure == Measure::kPrecision
                    ? AveragePrecisionFromFlags(flags, pool.num_ground_truth)
                    : static_cast<double>(CountTrue(flags)) /
                          pool.num_ground_truth;
  });
  MeanMetric metric;
  for (size_t c = 0; c < pools.size(); ++c) {
    if (pools[c].num_ground_truth == 0) continue;
    metric.per_class.push_back({static_cast<int>(c), pools[c].num_ground_truth,
                                100.0 * values[c]});
  }
  Aggregate(lexicon, metric);
  return metric;
}

}  // namespace

void ValidateEvalConfig(const EvalConfig& config) {
  if (config.alphas.empty()) {
    Throw(ErrorCode::kInvalidArgument, "at least one IoU threshold required");
  }
  for (size_t i = 0; i < config.alphas.size(); ++i) {
    const double a = config.alphas[i];
    if (!(a > 0.0 && a <= 1.0)) {
      Throw(ErrorCode::kInvalidArgument,
            "IoU threshold " + std::to_string(a) + " outside (0, 1]");
    }
    if (i > 0 && !(a > config.alphas[i - 1])) {
      Throw(ErrorCode::kInvalidArgument,
            "IoU thresholds must be strictly increasing");
    }
  }
  if (config.max_detections_per_video < 0) {
    Throw(ErrorCode::kInvalidArgument, "detection cap must be non-negative");
  }
}

std::vector<bool> MatchDetections(const DetectionList& detections,
                                  std::span<const Segment> ground_truth,
                                  double alpha) {
  std::vector<size_t> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return RanksBefore(detections[a], detections[b]);
  });
  std::vector<bool> used(ground_truth.size(), false);
  std::vector<bool> flags(detections.size(), false);
  for (size_t idx : order) {
    const Detection& d = detections[idx];
    int best = -1;
    double best_iou = -1.0;
    for (size_t g = 0; g < ground_truth.size(); ++g) {
      if (used[g] || ground_truth[g].step_id != d.step_id) continue;
      const double iou = TemporalIou(d.interval, ground_truth[g].interval);
      if (iou >= alpha && iou > best_iou) {
        best = static_cast<int>(g);
        best_iou = iou;
      }
    }
    if (best >= 0) {
      used[best] = true;
      flags[idx] = true;
    }
  }
  return flags;
}

double AveragePrecisionFromFlags(const std::vector<bool>& tp_in_rank_order,
                                 int num_ground_truth) {
  if (num_ground_truth <= 0) {
    Throw(ErrorCode::kNoGroundTruth, "average precision needs ground truth");
  }
  const size_t n = tp_in_rank_order.size();
  std::vector<double> precision(n);
  int tp = 0;
  for (size_t i = 0; i < n; ++i) {
    if (tp_in_rank_order[i]) ++tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  // Monotone envelope, then sum envelope precision at each recall step.
  // Every TP raises recall by exactly 1 / num_ground_truth.
  double envelope = 0.0;
  double sum = 0.0;
  for (size_t i = n; i-- > 0;) {
    envelope = std::max(envelope, precision[i]);
    if (tp_in_rank_order[i]) sum += envelope;
  }
  return sum / num_ground_truth;
}

double AveragePrecision(const DetectionList& detections,
                        std::span<const Segment> ground_truth, double alpha) {
  if (ground_truth.empty()) {
    Throw(ErrorCode::kNoGroundTruth, "class has no ground-truth segments");
  }
  const std::vector<bool> flags = MatchDetections(detections, ground_truth, alpha);
  std::vector<size_t> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return RanksBefore(detections[a], detections[b]);
  });
  std::vector<bool> ranked;
  ranked.reserve(order.size());
  for (size_t idx : order) ranked.push_back(flags[idx]);
  return AveragePrecisionFromFlags(ranked,
                                   static_cast<int>(ground_truth.size()));
}

MeanMetric MeanAp(const DetectionsByVideo& detections,
                  const std::vector<VideoAnnotation>& ground_truth,
                  double alpha, const Lexicon& lexicon, int num_threads) {
  const auto pools = BuildPools(detections, ground_truth, lexicon, 0);
  return ComputeMean(pools, alpha, lexicon, Measure::kPrecision, num_threads);
}

MeanMetric MeanAr(const DetectionsByVideo& detections,
                  const std::vector<VideoAnnotation>& ground_truth,
                  double alpha, const Lexicon& lexicon,
                  int max_detections_per_video, int num_threads) {
  const auto pools = BuildPools(detections, ground_truth, lexicon,
                                max_detections_per_video);
  return ComputeMean(pools, alpha, lexicon, Measure::kRecall, num_threads);
}

EvalReport Evaluate(const DetectionsByVideo& detections,
                    const std::vector<VideoAnnotation>& ground_truth,
                    const Lexicon& lexicon, const EvalConfig& config) {
  ValidateEvalConfig(config);
  EvalReport report;
  report.num_videos = static_cast<int>(ground_truth.size());
  for (const VideoAnnotation& v : ground_truth) {
    report.num_ground_truth += static_cast<int>(v.segments.size());
  }
  for (const auto& [id, list] : detections) {
    report.num_detections += static_cast<int>(list.size());
  }

  const auto ap_pools = BuildPools(detections, ground_truth, lexicon, 0);
  std::vector<ClassPool> capped_pools;
  if (config.max_detections_per_video > 0) {
    capped_pools = BuildPools(detections, ground_truth, lexicon,
                              config.max_detections_per_video);
  }
  const auto& ar_pools =
      config.max_detections_per_video > 0 ? capped_pools : ap_pools;

  for (double alpha : config.alphas) {
    const MeanMetric ap = ComputeMean(ap_pools, alpha, lexicon,
                                      Measure::kPrecision, config.num_threads);
    const MeanMetric ar = ComputeMean(ar_pools, alpha, lexicon,
                                      Measure::kRecall, config.num_threads);
    AlphaResult result;
    result.alpha = alpha;
    result.map = ap.mean;
    result.mar = ar.mean;
    for (size_t c = 0; c < ap.per_class.size(); ++c) {
      result.per_class.push_back({ap.per_class[c].step_id,
                                  ap.per_class[c].num_ground_truth,
                                  ap.per_class[c].value, ar.per_class[c].value});
    }
    result.per_task = ap.per_task;
    result.per_domain = ap.per_domain;
    report.per_alpha.push_back(std::move(result));
  }
  return report;
}

namespace {

// Adds the per-frame agreement of one video pair to the running counts.
void AccumulateFrames(const FrameLabelSequence& predicted,
                      const FrameLabelSequence& ground_truth,
                      long long& correct, long long& total) {
  if (predicted.labels.size() != ground_truth.labels.size() ||
      predicted.fps != ground_truth.fps) {
    Throw(ErrorCode::kLengthMismatch,
          "video '" + ground_truth.video_id + "': predicted " +
              std::to_string(predicted.labels.size()) + " frames at " +
              std::to_string(predicted.fps) + " fps, ground truth has " +
              std::to_string(ground_truth.labels.size()) + " frames at " +
              std::to_string(ground_truth.fps) + " fps");
  }
  for (size_t t = 0; t < ground_truth.labels.size(); ++t) {
    if (predicted.labels[t] == ground_truth.labels[t]) ++correct;
  }
  total += static_cast<long long>(ground_truth.labels.size());
}

double Ratio(long long correct, long long total) {
  if (total == 0) Throw(ErrorCode::kInvalidArgument, "no frames to compare");
  return static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace

double FrameAccuracy(const FrameLabelSequence& predicted,
                     const FrameLabelSequence& ground_truth) {
  long long correct = 0;
  long long total = 0;
  AccumulateFrames(predicted, ground_truth, correct, total);
  return Ratio(correct, total);
}

double FrameAccuracy(std::span<const FrameLabelSequence> predicted,
                     std::span<const FrameLabelSequence> ground_truth) {
  std::map<std::string, const FrameLabelSequence*> by_id;
  for (const FrameLabelSequence& p : predicted) by_id[p.video_id] = &p;
  long long correct = 0;
  long long total = 0;
  for (const FrameLabelSequence& gt : ground_truth) {
    auto it = by_id.find(gt.video_id);
    if (it == by_id.end()) {
      Throw(ErrorCode::kLengthMismatch,
            "no prediction for video '" + gt.video_id + "'");
    }
    AccumulateFrames(*it->second, gt, correct, total);
  }
  return Ratio(correct, total);
}

}  // namespace stepcoin
