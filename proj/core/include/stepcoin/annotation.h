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

#ifndef STEPCOIN_ANNOTATION_H_
#define STEPCOIN_ANNOTATION_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stepcoin/interval.h"
#include "stepcoin/lexicon.h"

namespace stepcoin {

// Frame label for frames not covered by any step segment. Never a valid
// index into a step-score vector.
inline constexpr int kBackground = -1;

inline constexpr std::string_view kAnnotationFormat = "stepcoin-ann-v1";
inline constexpr std::string_view kProposalFormat = "stepcoin-prop-v1";
inline constexpr std::string_view kFrameLabelFormat = "stepcoin-frames-v1";

struct Segment {
  Interval interval;
  int step_id = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct VideoAnnotation {
  std::string video_id;
  int task_id = 0;
  double duration = 0.0;
  std::vector<Segment> segments;  // ordered by start
  friend bool operator==(const VideoAnnotation&,
                         const VideoAnnotation&) = default;
};

struct Proposal {
  Interval interval;
  std::vector<double> scores;  // one non-negative entry per step
  friend bool operator==(const Proposal&, const Proposal&) = default;
};

struct ProposalSet {
  std::string video_id;
  std::vector<Proposal> proposals;
  friend bool operator==(const ProposalSet&, const ProposalSet&) = default;
};

struct FrameLabelSequence {
  std::string video_id;
  double fps = 0.0;
  std::vector<int> labels;  // step id or kBackground
  friend bool operator==(const FrameLabelSequence&,
                         const FrameLabelSequence&) = default;
};

// Checks a segment list in isolation: every interval valid and inside
// [0, duration], pairwise non-overlapping, every step id known to the
// lexicon. Throws kValidationError. Used for drafts, where task-consistency
// is not yet required.
void ValidateSegments(std::string_view video_id, double duration,
                      const std::vector<Segment>& segments,
                      const Lexicon& lexicon);

// ValidateSegments plus the task-consistency rule: every segment's step
// belongs to annotation.task_id.
void ValidateAnnotation(const VideoAnnotation& annotation,
                        const Lexicon& lexicon);

// Annotation file. Videos are returned sorted by video_id and segments by
// start time. Violations name the video id and segment index.
std::vector<VideoAnnotation> LoadAnnotations(std::string_view json_text,
                                             const Lexicon& lexicon);
std::vector<VideoAnnotation> LoadAnnotationsFile(
    const std::filesystem::path& path, const Lexicon& lexicon);
std::string SerializeAnnotations(const std::vector<VideoAnnotation>& videos);

// Proposal file. The declared "num_steps" must equal num_steps, and so must
// the length of every score vector (kDimensionMismatch otherwise). Scores
// must be finite and non-negative.
std::vector<ProposalSet> LoadProposals(std::string_view json_text,
                                       int num_steps);
std::vector<ProposalSet> LoadProposalsFile(const std::filesystem::path& path,
                                           int num_steps);
std::string SerializeProposals(const std::vector<ProposalSet>& sets,
                               int num_steps);

// Number of frames sampled from a video: floor(duration * fps).
int FrameCount(double duration, double fps);

// Frame t sits at time t / fps and takes the step of the segment whose
// half-open interval contains it, or kBackground.
FrameLabelSequence SegmentsToFrameLabels(const VideoAnnotation& annotation,
                                         double fps);

// Maximal runs of one non-background label become segments
// [first / fps, (last + 1) / fps).
std::vector<Segment> FrameLabelsToSegments(const FrameLabelSequence& seq);

// Frame-label prediction file: {"format", "fps", "videos": {id: [labels]}}.
std::vector<FrameLabelSequence> LoadFrameLabels(std::string_view json_text);
std::string SerializeFrameLabels(const std::vector<FrameLabelSequence>& seqs);

}  // namespace stepcoin

#endif  // STEPCOIN_ANNOTATION_H_
