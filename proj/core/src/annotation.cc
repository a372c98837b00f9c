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

#include "stepcoin/annotation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "json_util.h"
#include "stepcoin/error.h"

namespace stepcoin {

using internal::Json;

namespace {

std::string SegmentContext(std::string_view video_id, size_t index) {
  return "video '" + std::string(video_id) + "' segment " +
         std::to_string(index);
}

[[noreturn]] void Invalid(const std::string& message) {
  Throw(ErrorCode::kValidationError, message);
}

Interval ParseInterval(const Json& object, const std::string& context) {
  return {internal::GetNumber(object, "start", context),
          internal::GetNumber(object, "end", context)};
}

void SortByStart(std::vector<Segment>& segments) {
  std::stable_sort(segments.begin(), segments.end(),
                   [](const Segment& a, const Segment& b) {
                     return a.interval.start < b.interval.start;
                   });
}

}  // namespace

void ValidateSegments(std::string_view video_id, double duration,
                      const std::vector<Segment>& segments,
                      const Lexicon& lexicon) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    Invalid("video '" + std::string(video_id) +
            "': duration must be positive");
  }
  for (size_t i = 0; i < segments.size(); ++i) {
    const Interval& iv = segments[i].interval;
    if (!std::isfinite(iv.start) || !std::isfinite(iv.end)) {
      Invalid(SegmentContext(video_id, i) + ": non-finite bound");
    }
    if (iv.start < 0.0) {
      Invalid(SegmentContext(video_id, i) + ": negative start");
    }
    if (!(iv.start < iv.end)) {
      Invalid(SegmentContext(video_id, i) + ": empty interval");
    }
    if (iv.end > duration) {
      Invalid(SegmentContext(video_id, i) + ": out of range (ends after " +
              "video duration)");
    }
    if (!lexicon.HasStep(segments[i].step_id)) {
      Invalid(SegmentContext(video_id, i) + ": unknown step_id " +
              std::to_string(segments[i].step_id));
    }
  }
  std::vector<size_t> order(segments.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return segments[a].interval.start < segments[b].interval.start;
  });
  for (size_t k = 1; k < order.size(); ++k) {
    const Segment& prev = segments[order[k - 1]];
    const Segment& cur = segments[order[k]];
    if (cur.interval.start < prev.interval.end) {
      Invalid(SegmentContext(video_id, order[k]) +
              ": overlapping segments (overlaps segment " +
              std::to_string(order[k - 1]) + ")");
    }
  }
}

void ValidateAnnotation(const VideoAnnotation& annotation,
                        const Lexicon& lexicon) {
  if (annotation.task_id < 0 || annotation.task_id >= lexicon.num_tasks()) {
    Invalid("video '" + annotation.video_id + "': unknown task_id " +
            std::to_string(annotation.task_id));
  }
  ValidateSegments(annotation.video_id, annotation.duration,
                   annotation.segments, lexicon);
  for (size_t i = 0; i < annotation.segments.size(); ++i) {
    const int step = annotation.segments[i].step_id;
    if (lexicon.TaskOfStep(step) != annotation.task_id) {
      Invalid(SegmentContext(annotation.video_id, i) +
              ": task-consistency violated (step " + std::to_string(step) +
              " belongs to task " + std::to_string(lexicon.TaskOfStep(step)) +
              ", video task is " + std::to_string(annotation.task_id) + ")");
    }
  }
}

std::vector<VideoAnnotation> LoadAnnotations(std::string_view json_text,
                                             const Lexicon& lexicon) {
  const Json root = internal::ParseJson(json_text, "annotations");
  internal::ExpectFormat(root, kAnnotationFormat);
  const Json& videos = internal::Member(root, "videos", "annotations");
  if (!videos.is_object()) {
    Throw(ErrorCode::kParseError, "annotations: \"videos\" must be an object");
  }
  std::vector<VideoAnnotation> out;
  out.reserve(videos.size());
  for (const auto& [video_id, entry] : videos.items()) {
    const std::string context = "video '" + video_id + "'";
    VideoAnnotation ann;
    ann.video_id = video_id;
    ann.task_id = internal::GetInt(entry, "task_id", context);
    ann.duration = internal::GetNumber(entry, "duration", context);
    const Json& segments = internal::Member(entry, "segments", context);
    if (!segments.is_array()) {
      Throw(ErrorCode::kParseError, context + ": \"segments\" must be an array");
    }
    for (size_t i = 0; i < segments.size(); ++i) {
      const std::string seg_context = SegmentContext(video_id, i);
      ann.segments.push_back(
          {ParseInterval(segments[i], seg_context),
           internal::GetInt(segments[i], "step_id", seg_context)});
    }
    ValidateAnnotation(ann, lexicon);
    SortByStart(ann.segments);
    out.push_back(std::move(ann));
  }
  // nlohmann objects iterate in key order, so `out` is already sorted.
  return out;
}

std::vector<VideoAnnotation> LoadAnnotationsFile(
    const std::filesystem::path& path, const Lexicon& lexicon) {
  return LoadAnnotations(ReadFile(path), lexicon);
}

std::string SerializeAnnotations(const std::vector<VideoAnnotation>& videos) {
  Json by_id = Json::object();
  for (const VideoAnnotation& v : videos) {
    Json segments = Json::array();
    for (const Segment& s : v.segments) {
      segments.push_back({{"start", s.interval.start},
                          {"end", s.interval.end},
                          {"step_id", s.step_id}});
    }
    by_id[v.video_id] = {{"task_id", v.task_id},
                         {"duration", v.duration},
                         {"segments", std::move(segments)}};
  }
  Json root = {{"format", std::string(kAnnotationFormat)}, {"videos", std::move(by_id)}};
  return internal::Dump(root);
}

std::vector<ProposalSet> LoadProposals(std::string_view json_text,
                                       int num_steps) {
  const Json root = internal::ParseJson(json_text, "proposals");
  internal::ExpectFormat(root, kProposalFormat);
  const int declared = internal::GetInt(root, "num_steps", "proposals");
  if (declared != num_steps) {
    Throw(ErrorCode::kDimensionMismatch,
          "proposal file declares " + std::to_string(declared) +
              " steps, lexicon has " + std::to_string(num_steps));
  }
  const Json& videos = internal::Member(root, "videos", "proposals");
  if (!videos.is_object()) {
    Throw(ErrorCode::kParseError, "proposals: \"videos\" must be an object");
  }
  std::vector<ProposalSet> out;
  for (const auto& [video_id, list] : videos.items()) {
    if (!list.is_array()) {
      Throw(ErrorCode::kParseError,
            "video '" + video_id + "': proposals must be an array");
    }
    ProposalSet set{video_id, {}};
    set.proposals.reserve(list.size());
    for (size_t n = 0; n < list.size(); ++n) {
      const std::string context =
          "video '" + video_id + "' proposal " + std::to_string(n);
      Proposal p;
      p.interval = ParseInterval(list[n], context);
      if (!std::isfinite(p.interval.start) || !std::isfinite(p.interval.end) ||
          !p.interval.IsValid()) {
        Invalid(context + ": invalid interval");
      }
      const Json& scores = internal::Member(list[n], "scores", context);
      if (!scores.is_array()) {
        Throw(ErrorCode::kParseError, context + ": \"scores\" must be an array");
      }
      if (static_cast<int>(scores.size()) != num_steps) {
        Throw(ErrorCode::kDimensionMismatch,
              context + ": score vector has length " +
                  std::to_string(scores.size()) + ", expected " +
                  std::to_string(num_steps));
      }
      p.scores.reserve(scores.size());
      for (const Json& s : scores) {
        if (!s.is_number()) {
          Throw(ErrorCode::kParseError, context + ": non-numeric score");
        }
        const double v = s.get<double>();
        if (!std::isfinite(v) || v < 0.0) {
          Invalid(context + ": scores must be finite and non-negative");
        }
        p.scores.push_back(v);
      }
      set.proposals.push_back(std::move(p));
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<ProposalSet> LoadProposalsFile(const std::filesystem::path& path,
                                           int num_steps) {
  return LoadProposals(ReadFile(path), num_steps);
}

std::string SerializeProposals(const std::vector<ProposalSet>& sets,
                               int num_steps) {
  Json by_id = Json::object();
  for (const ProposalSet& set : sets) {
    Json list = Json::array();
    for (const Proposal& p : set.proposals) {
      list.push_back({{"start", p.interval.start},
                      {"end", p.interval.end},
                      {"scores", p.scores}});
    }
    by_id[set.video_id] = std::move(list);
  }
  Json root = {{"format", std::string(kProposalFormat)},
               {"num_steps", num_steps},
               {"videos", std::move(by_id)}};
  return internal::Dump(root);
}

int FrameCount(double duration, double fps) {
  // The epsilon absorbs products such as 141.3 * 10 landing just below an
  // integer.
  return static_cast<int>(std::floor(duration * fps + 1e-9));
}

FrameLabelSequence SegmentsToFrameLabels(const VideoAnnotation& annotation,
                                         double fps) {
  if (!(fps > 0.0)) Throw(ErrorCode::kInvalidArgument, "fps must be positive");
  FrameLabelSequence seq{annotation.video_id, fps, {}};
  const int n = FrameCount(annotation.duration, fps);
  seq.labels.assign(n, kBackground);
  for (const Segment& s : annotation.segments) {
    int first = std::max(0, static_cast<int>(std::floor(s.interval.start * fps)) - 1);
    for (int t = first; t < n; ++t) {
      const double ts = t / fps;
      if (ts >= s.interval.end) break;
      if (s.interval.Contains(ts)) seq.labels[t] = s.step_id;
    }
  }
  return seq;
}

std::vector<Segment> FrameLabelsToSegments(const FrameLabelSequence& seq) {
  std::vector<Segment> out;
  const int n = static_cast<int>(seq.labels.size());
  int t = 0;
  while (t < n) {
    const int label = seq.labels[t];
    int run_end = t + 1;
    while (run_end < n && seq.labels[run_end] == label) ++run_end;
    if (label != kBackground) {
      out.push_back({{t / seq.fps, run_end / seq.fps}, label});
    }
    t = run_end;
  }
  return out;
}

std::vector<FrameLabelSequence> LoadFrameLabels(std::string_view json_text) {
  const Json root = internal::ParseJson(json_text, "frame labels");
  internal::ExpectFormat(root, kFrameLabelFormat);
  const double fps = internal::GetNumber(root, "fps", "frame labels");
  if (!(fps > 0.0)) Invalid("frame labels: fps must be positive");
  const Json& videos = internal::Member(root, "videos", "frame labels");
  if (!videos.is_object()) {
    Throw(ErrorCode::kParseError, "frame labels: \"videos\" must be an object");
  }
  std::vector<FrameLabelSequence> out;
  for (const auto& [video_id, labels] : videos.items()) {
    if (!labels.is_array()) {
      Throw(ErrorCode::kParseError,
            "video '" + video_id + "': labels must be an array");
    }
    FrameLabelSequence seq{video_id, fps, {}};
    seq.labels.reserve(labels.size());
    for (const Json& l : labels) {
      if (!l.is_number_integer() || l.get<int>() < kBackground) {
        Invalid("video '" + video_id + "': labels must be integers >= -1");
      }
      seq.labels.push_back(l.get<int>());
    }
    out.push_back(std::move(seq));
  }
  return out;
}

std::string SerializeFrameLabels(const std::vector<FrameLabelSequence>& seqs) {
  double fps = seqs.empty() ? 10.0 : seqs.front().fps;
  Json by_id = Json::object();
  for (const FrameLabelSequence& s : seqs) {
    if (s.fps != fps) {
      Throw(ErrorCode::kInvalidArgument,
            "all sequences in one frame-label file must share an fps");
    }
    by_id[s.video_id] = s.labels;
  }
  Json root = {{"format", std::string(kFrameLabelFormat)},
               {"fps", fps},
               {"videos", std::move(by_id)}};
  return internal::Dump(root);
}

}  // namespace stepcoin
