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

#include "stepcoin/annotation_service.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <utility>

#include <fmt/format.h>

#include "json_util.h"
#include "stepcoin/error.h"

namespace stepcoin {

using internal::Json;

namespace {

constexpr std::string_view kProjectFormat = "stepcoin-project-v1";
constexpr std::string_view kStoreFormat = "stepcoin-store-v1";

struct VideoRecord {
  WorkflowState state = WorkflowState::kPass1;
  std::int64_t revision = 0;
  std::optional<DraftAnnotation> draft;
};

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z",
                     tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                     tm.tm_min, tm.tm_sec);
}

Json SegmentsToJson(const std::vector<Segment>& segments) {
  Json out = Json::array();
  for (const Segment& s : segments) {
    out.push_back({{"start", s.interval.start},
                   {"end", s.interval.end},
                   {"step_id", s.step_id}});
  }
  return out;
}

std::vector<Segment> SegmentsFromJson(const Json& list,
                                      std::string_view context) {
  if (!list.is_array()) {
    Throw(ErrorCode::kParseError,
          std::string(context) + ": segments must be an array");
  }
  std::vector<Segment> out;
  for (const Json& s : list) {
    out.push_back({{internal::GetNumber(s, "start", context),
                    internal::GetNumber(s, "end", context)},
                   internal::GetInt(s, "step_id", context)});
  }
  return out;
}

Json DraftToJson(const DraftAnnotation& draft) {
  return {{"segments", SegmentsToJson(draft.segments)},
          {"author_pass", draft.author_pass},
          {"worker", draft.worker},
          {"saved_at", draft.saved_at}};
}

DraftAnnotation DraftFromJson(const Json& j, std::string video_id) {
  DraftAnnotation d;
  d.video_id = std::move(video_id);
  d.segments = SegmentsFromJson(internal::Member(j, "segments", "draft"), "draft");
  d.author_pass = internal::GetInt(j, "author_pass", "draft");
  if (auto it = j.find("worker"); it != j.end() && it->is_string()) {
    d.worker = it->get<std::string>();
  }
  if (auto it = j.find("saved_at"); it != j.end() && it->is_string()) {
    d.saved_at = it->get<std::string>();
  }
  return d;
}

// Finds the extraction rate that serves `fps` and the subsampling stride.
std::optional<std::pair<double, long long>> ChooseRate(
    const std::vector<double>& native, double fps) {
  std::optional<std::pair<double, long long>> best;
  for (double rate : native) {
    const double ratio = rate / fps;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) continue;
    const auto stride = static_cast<long long>(rounded);
    if (!best || stride < best->second) best = {rate, stride};
  }
  return best;
}

std::string RateDir(double rate) { return fmt::format("{:g}", rate); }

}  // namespace

struct AnnotationService::Project {
  struct Snapshot {
    std::map<std::string, VideoRecord, std::less<>> records;
  };

  ProjectDefinition definition;
  std::map<std::string, VideoEntry, std::less<>> entries;
  Lexicon lexicon;
  std::filesystem::path dir;

  // Serializes writers, including their disk I/O.
  std::mutex write_mu;
  // Guards only the pointer swap.
  mutable std::mutex snapshot_mu;
  std::shared_ptr<const Snapshot> snapshot;

  Project(ProjectDefinition def, Lexicon lex, std::filesystem::path d)
      : definition(std::move(def)), lexicon(std::move(lex)), dir(std::move(d)) {
    for (const VideoEntry& v : definition.videos) entries.emplace(v.video_id, v);
  }

  std::shared_ptr<const Snapshot> Current() const {
    std::lock_guard<std::mutex> lock(snapshot_mu);
    return snapshot;
  }

  void Publish(std::shared_ptr<const Snapshot> next) {
    std::lock_guard<std::mutex> lock(snapshot_mu);
    snapshot = std::move(next);
  }

  const VideoEntry& Entry(std::string_view video) const {
    auto it = entries.find(video);
    if (it == entries.end()) {
      Throw(ErrorCode::kUnknownVideo,
            "unknown video '" + std::string(video) + "' in project '" +
                definition.project_id + "'");
    }
    return it->second;
  }

  void Persist(const Snapshot& snap) const {
    Json videos = Json::object();
    for (const auto& [id, rec] : snap.records) {
      videos[id] = {{"state", std::string(WorkflowStateName(rec.state))},
                    {"revision", rec.revision},
                    {"draft", rec.draft ? DraftToJson(*rec.draft) : Json()}};
    }
    Json root = {{"format", std::string(kStoreFormat)}, {"videos", videos}};
    WriteFileAtomic(dir / "store.json", internal::Dump(root));
  }

  void Load() {
    auto snap = std::make_shared<Snapshot>();
    for (const VideoEntry& v : definition.videos) snap->records[v.video_id] = {};
    const auto store_path = dir / "store.json";
    if (std::filesystem::exists(store_path)) {
      const Json root = internal::ParseJson(ReadFile(store_path), "store");
      internal::ExpectFormat(root, kStoreFormat);
      for (const auto& [id, rec] : internal::Member(root, "videos", "store").items()) {
        auto it = snap->records.find(id);
        if (it == snap->records.end()) continue;
        const auto state =
            ParseWorkflowState(internal::GetString(rec, "state", "store"));
        if (!state) Throw(ErrorCode::kParseError, "store: bad workflow state");
        it->second.state = *state;
        it->second.revision = rec.at("revision").get<std::int64_t>();
        if (const Json& d = internal::Member(rec, "draft", "store"); !d.is_null()) {
          it->second.draft = DraftFromJson(d, id);
        }
      }
    }
    snapshot = std::move(snap);
  }
};

std::string_view WorkflowStateName(WorkflowState state) {
  switch (state) {
    case WorkflowState::kPass1:
      return "PASS1";
    case WorkflowState::kPass2:
      return "PASS2";
    case WorkflowState::kPass3:
      return "PASS3";
    case WorkflowState::kDone:
      return "DONE";
  }
  return "DONE";
}

std::optional<WorkflowState> ParseWorkflowState(std::string_view name) {
  for (WorkflowState s : {WorkflowState::kPass1, WorkflowState::kPass2,
                          WorkflowState::kPass3, WorkflowState::kDone}) {
    if (WorkflowStateName(s) == name) return s;
  }
  return std::nullopt;
}

int PassNumber(WorkflowState state) {
  switch (state) {
    case WorkflowState::kPass1:
      return 1;
    case WorkflowState::kPass2:
      return 2;
    case WorkflowState::kPass3:
      return 3;
    case WorkflowState::kDone:
      return 0;
  }
  return 0;
}

namespace {

WorkflowState NextState(WorkflowState state) {
  switch (state) {
    case WorkflowState::kPass1:
      return WorkflowState::kPass2;
    case WorkflowState::kPass2:
      return WorkflowState::kPass3;
    default:
      return WorkflowState::kDone;
  }
}

}  // namespace

AnnotationService::AnnotationService(std::filesystem::path data_dir)
    : data_dir_(std::move(data_dir)) {
  const auto projects_dir = data_dir_ / "projects";
  if (!std::filesystem::is_directory(projects_dir)) return;
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(projects_dir)) {
    if (entry.is_directory() &&
        std::filesystem::exists(entry.path() / "project.json")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    const Json root =
        internal::ParseJson(ReadFile(dir / "project.json"), "project");
    internal::ExpectFormat(root, kProjectFormat);
    ProjectDefinition def;
    def.project_id = internal::GetString(root, "project_id", "project");
    for (const Json& v : internal::Member(root, "videos", "project")) {
      VideoEntry e;
      e.video_id = internal::GetString(v, "video_id", "project video");
      e.duration = internal::GetNumber(v, "duration", "project video");
      e.task_id = internal::GetInt(v, "task_id", "project video");
      e.frame_dir = internal::GetString(v, "frame_dir", "project video");
      e.native_fps =
          internal::Member(v, "native_fps", "project video").get<std::vector<double>>();
      if (auto it = v.find("video_file"); it != v.end() && it->is_string()) {
        e.video_file = it->get<std::string>();
      }
      def.videos.push_back(std::move(e));
    }
    Lexicon lexicon = LoadLexiconFile(dir / "lexicon.json");
    auto project = std::make_unique<Project>(std::move(def), std::move(lexicon), dir);
    project->Load();
    const std::string id = project->definition.project_id;
    projects_.emplace(id, std::move(project));
  }
}

AnnotationService::~AnnotationService() = default;

void AnnotationService::CreateProject(const std::filesystem::path& data_dir,
                                      const ProjectDefinition& definition,
                                      const Lexicon& lexicon) {
  const auto dir = data_dir / "projects" / definition.project_id;
  std::filesystem::create_directories(dir);
  Json videos = Json::array();
  for (const VideoEntry& v : definition.videos) {
    Json e = {{"video_id", v.video_id},
              {"duration", v.duration},
              {"task_id", v.task_id},
              {"frame_dir", v.frame_dir},
              {"native_fps", v.native_fps}};
    if (!v.video_file.empty()) e["video_file"] = v.video_file;
    videos.push_back(std::move(e));
  }
  Json root = {{"format", std::string(kProjectFormat)},
               {"project_id", definition.project_id},
               {"videos", std::move(videos)}};
  WriteFileAtomic(dir / "project.json", internal::Dump(root));
  WriteFileAtomic(dir / "lexicon.json", SerializeLexicon(lexicon));
}

const AnnotationService::Project& AnnotationService::FindProject(
    std::string_view id) const {
  auto it = projects_.find(id);
  if (it == projects_.end()) {
    Throw(ErrorCode::kUnknownProject, "unknown project '" + std::string(id) + "'");
  }
  return *it->second;
}

AnnotationService::Project& AnnotationService::FindProject(std::string_view id) {
  return const_cast<Project&>(std::as_const(*this).FindProject(id));
}

std::vector<std::string> AnnotationService::ListProjects() const {
  std::vector<std::string> out;
  for (const auto& [id, p] : projects_) out.push_back(id);
  return out;
}

std::vector<VideoSummary> AnnotationService::ListVideos(
    std::string_view project) const {
  const Project& p = FindProject(project);
  const auto snap = p.Current();
  std::vector<VideoSummary> out;
  for (const auto& [id, entry] : p.entries) {
    const VideoRecord& rec = snap->records.at(id);
    out.push_back({id, entry.duration, entry.task_id, rec.state, rec.revision,
                   VideoFile(project, id).has_value()});
  }
  return out;
}

std::vector<FrameRef> AnnotationService::GetFrames(std::string_view project,
                                                   std::string_view video,
                                                   double fps) const {
  const VideoEntry& entry = FindProject(project).Entry(video);
  if (!(fps > 0.0) || !std::isfinite(fps)) {
    Throw(ErrorCode::kUnsupportedRate, "frame rate must be positive");
  }
  const auto rate = ChooseRate(entry.native_fps, fps);
  if (!rate) {
    Throw(ErrorCode::kUnsupportedRate,
          fmt::format("{:g} fps is not available for video '{}'", fps,
                      std::string(video)));
  }
  const auto [native, stride] = *rate;
  const auto count =
      static_cast<long long>(std::ceil(entry.duration * fps - 1e-9));
  std::vector<FrameRef> frames;
  frames.reserve(static_cast<size_t>(std::max(0LL, count)));
  for (long long t = 0; t < count; ++t) {
    frames.push_back({fmt::format("/frames/{}/{}/{:06d}.jpg", entry.frame_dir,
                                  RateDir(native), t * stride),
                      static_cast<double>(t) / fps});
  }
  return frames;
}

AnnotationView AnnotationService::GetAnnotation(std::string_view project,
                                                std::string_view video) const {
  const Project& p = FindProject(project);
  const VideoEntry& entry = p.Entry(video);
  const auto snap = p.Current();
  const VideoRecord& rec = snap->records.find(video)->second;
  return {{entry.video_id, entry.duration, entry.task_id, rec.state,
           rec.revision, VideoFile(project, video).has_value()},
          rec.draft};
}

SubmitResult AnnotationService::SubmitAnnotation(std::string_view project,
                                                 std::string_view video,
                                                 DraftAnnotation draft,
                                                 std::int64_t expected_revision,
                                                 bool complete_pass) {
  Project& p = FindProject(project);
  const VideoEntry& entry = p.Entry(video);
  std::lock_guard<std::mutex> lock(p.write_mu);
  const auto current = p.Current();
  const VideoRecord& rec = current->records.find(video)->second;
  if (rec.revision != expected_revision) {
    Throw(ErrorCode::kRevisionConflict,
          fmt::format("video '{}' is at revision {}, submit expected {}",
                      entry.video_id, rec.revision, expected_revision));
  }
  if (rec.state == WorkflowState::kDone || draft.author_pass != PassNumber(rec.state)) {
    Throw(ErrorCode::kWrongPass,
          fmt::format("video '{}' is in {}, submit is for pass {}",
                      entry.video_id, WorkflowStateName(rec.state),
                      draft.author_pass));
  }
  draft.video_id = entry.video_id;
  ValidateSegments(entry.video_id, entry.duration, draft.segments, p.lexicon);
  std::stable_sort(draft.segments.begin(), draft.segments.end(),
                   [](const Segment& a, const Segment& b) {
                     return a.interval.start < b.interval.start;
                   });
  draft.saved_at = UtcNow();

  auto next = std::make_shared<Project::Snapshot>(*current);
  VideoRecord& updated = next->records.find(video)->second;
  updated.draft = std::move(draft);
  updated.revision += 1;
  if (complete_pass) updated.state = NextState(updated.state);
  p.Persist(*next);
  const SubmitResult result{updated.revision, updated.state};
  p.Publish(std::move(next));
  return result;
}

SubmitResult AnnotationService::Advance(std::string_view project,
                                        std::string_view video, int author_pass,
                                        std::int64_t expected_revision) {
  Project& p = FindProject(project);
  const VideoEntry& entry = p.Entry(video);
  std::lock_guard<std::mutex> lock(p.write_mu);
  const auto current = p.Current();
  const VideoRecord& rec = current->records.find(video)->second;
  if (rec.revision != expected_revision) {
    Throw(ErrorCode::kRevisionConflict,
          fmt::format("video '{}' is at revision {}, request expected {}",
                      entry.video_id, rec.revision, expected_revision));
  }
  if (rec.state == WorkflowState::kDone || author_pass != PassNumber(rec.state)) {
    Throw(ErrorCode::kWrongPass,
          fmt::format("video '{}' is in {}, request is for pass {}",
                      entry.video_id, WorkflowStateName(rec.state), author_pass));
  }
  auto next = std::make_shared<Project::Snapshot>(*current);
  VideoRecord& updated = next->records.find(video)->second;
  updated.revision += 1;
  updated.state = NextState(updated.state);
  p.Persist(*next);
  const SubmitResult result{updated.revision, updated.state};
  p.Publish(std::move(next));
  return result;
}

std::string AnnotationService::ExportAnnotations(std::string_view project) const {
  const Project& p = FindProject(project);
  const auto snap = p.Current();
  std::vector<VideoAnnotation> videos;
  for (const auto& [id, entry] : p.entries) {
    const VideoRecord& rec = snap->records.at(id);
    if (rec.state != WorkflowState::kDone) {
      Throw(ErrorCode::kIncompleteProject,
            fmt::format("video '{}' is still in {}", id,
                        WorkflowStateName(rec.state)));
    }
    VideoAnnotation ann{id, entry.task_id, entry.duration,
                        rec.draft ? rec.draft->segments : std::vector<Segment>{}};
    ValidateAnnotation(ann, p.lexicon);
    videos.push_back(std::move(ann));
  }
  return SerializeAnnotations(videos);
}

const Lexicon& AnnotationService::lexicon(std::string_view project) const {
  return FindProject(project).lexicon;
}

std::optional<std::filesystem::path> AnnotationService::VideoFile(
    std::string_view project, std::string_view video) const {
  const VideoEntry& entry = FindProject(project).Entry(video);
  if (entry.video_file.empty()) return std::nullopt;
  auto path = data_dir_ / "videos" / entry.video_file;
  if (!std::filesystem::exists(path)) return std::nullopt;
  return path;
}

}  // namespace stepcoin
