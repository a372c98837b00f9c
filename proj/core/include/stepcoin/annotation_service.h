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

#ifndef STEPCOIN_ANNOTATION_SERVICE_H_
#define STEPCOIN_ANNOTATION_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stepcoin/annotation.h"
#include "stepcoin/lexicon.h"

namespace stepcoin {

// Three-pass annotation workflow: a first worker annotates in frame mode, a
// second adjusts, a third verifies in video mode. DONE is terminal.
enum class WorkflowState { kPass1, kPass2, kPass3, kDone };

std::string_view WorkflowStateName(WorkflowState state);
std::optional<WorkflowState> ParseWorkflowState(std::string_view name);
// 1, 2, 3 for the pass states; 0 for kDone.
int PassNumber(WorkflowState state);

inline constexpr double kDefaultFrameRate = 2.0;

struct VideoEntry {
  std::string video_id;
  double duration = 0.0;
  int task_id = 0;
  // Directory under <data>/frames holding one sub-directory per extraction
  // rate, e.g. <frame_dir>/10/000123.jpg.
  std::string frame_dir;
  std::vector<double> native_fps = {kDefaultFrameRate};
  // Optional original video under <data>/videos, used by video mode.
  std::string video_file;
};

struct ProjectDefinition {
  std::string project_id;
  std::vector<VideoEntry> videos;
};

struct DraftAnnotation {
  std::string video_id;
  std::vector<Segment> segments;
  int author_pass = 1;
  std::string worker;
  std::string saved_at;  // set by the service, UTC ISO-8601
  friend bool operator==(const DraftAnnotation&,
                         const DraftAnnotation&) = default;
};

struct VideoSummary {
  std::string video_id;
  double duration = 0.0;
  int task_id = 0;
  WorkflowState state = WorkflowState::kPass1;
  std::int64_t revision = 0;
  bool has_video_file = false;
};

struct FrameRef {
  std::string url;
  double timestamp = 0.0;
};

struct AnnotationView {
  VideoSummary summary;
  std::optional<DraftAnnotation> draft;
};

struct SubmitResult {
  std::int64_t revision = 0;
  WorkflowState state = WorkflowState::kPass1;
};

// File-backed annotation projects under a data directory:
//
//   <data>/projects/<project_id>/project.json   definition (read-only)
//   <data>/projects/<project_id>/lexicon.json
//   <data>/projects/<project_id>/store.json     workflow state and drafts
//   <data>/frames/...                           pre-extracted frames
//   <data>/videos/...                           original videos (optional)
//
// Writes to one project are serialized; each write is persisted with an
// atomic rename before it is acknowledged and before readers can see it.
// Readers work on the last committed snapshot and never wait for I/O.
class AnnotationService {
 public:
  explicit AnnotationService(std::filesystem::path data_dir);
  ~AnnotationService();

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  // Writes project.json and lexicon.json for a new project. Existing store
  // state is left alone.
  static void CreateProject(const std::filesystem::path& data_dir,
                            const ProjectDefinition& definition,
                            const Lexicon& lexicon);

  const std::filesystem::path& data_dir() const { return data_dir_; }

  std::vector<std::string> ListProjects() const;

  // Sorted by video id. Throws kUnknownProject.
  std::vector<VideoSummary> ListVideos(std::string_view project) const;

  // Frames at t / fps covering [0, duration). fps must equal one of the
  // video's extraction rates or divide one evenly. Throws kUnknownVideo,
  // kUnsupportedRate.
  std::vector<FrameRef> GetFrames(std::string_view project,
                                  std::string_view video,
                                  double fps = kDefaultFrameRate) const;

  AnnotationView GetAnnotation(std::string_view project,
                               std::string_view video) const;

  // Saves a draft. Checks, in order: the expected revision
  // (kRevisionConflict), the author pass against the workflow state
  // (kWrongPass), then the segments (kValidationError). On success the
  // revision increases by one and, if complete_pass is set, the workflow
  // advances one stage.
  SubmitResult SubmitAnnotation(std::string_view project,
                                std::string_view video, DraftAnnotation draft,
                                std::int64_t expected_revision,
                                bool complete_pass);

  // Marks the current pass complete without changing the draft.
  SubmitResult Advance(std::string_view project, std::string_view video,
                       int author_pass, std::int64_t expected_revision);

  // Annotation file for the whole project. Throws kIncompleteProject unless
  // every video is DONE, and kValidationError (naming the video) when a
  // draft breaks task-consistency.
  std::string ExportAnnotations(std::string_view project) const;

  const Lexicon& lexicon(std::string_view project) const;

  // Absolute path of the original video, if the project lists one and it
  // exists on disk.
  std::optional<std::filesystem::path> VideoFile(std::string_view project,
                                                 std::string_view video) const;

 private:
  struct Project;

  const Project& FindProject(std::string_view id) const;
  Project& FindProject(std::string_view id);

  std::filesystem::path data_dir_;
  std::map<std::string, std::unique_ptr<Project>, std::less<>> projects_;
};

}  // namespace stepcoin

#endif  // STEPCOIN_ANNOTATION_SERVICE_H_
