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

#include "cli.h"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "stepcoin/annotation.h"
#include "stepcoin/annotation_service.h"
#include "stepcoin/consistency.h"
#include "stepcoin/detection_io.h"
#include "stepcoin/error.h"
#include "stepcoin/http_server.h"
#include "stepcoin/io.h"
#include "stepcoin/lexicon.h"
#include "stepcoin/metrics.h"
#include "stepcoin/parallel.h"
#include "stepcoin/report.h"
#include "stepcoin/synthgen.h"
#include "stepcoin/timeline.h"

namespace stepcoin::cli {

namespace {

namespace fs = std::filesystem;

std::atomic<bool> g_shutdown{false};
static_assert(std::atomic<bool>::is_always_lock_free);

void Print(std::ostream& os, const std::string& text) { os << text << std::flush; }

struct LocalizeFlags {
  bool with_tc = false;
  double gamma = kDefaultGamma;
  double nms = kDefaultNmsThreshold;
  int top_c = kDefaultTopC;
  int threads = 0;

  LocalizationOptions Options() const { return {gamma, top_c, nms}; }
};

void AddLocalizeFlags(CLI::App& cmd, LocalizeFlags& flags) {
  cmd.add_option("--gamma", flags.gamma, "Off-task attenuation coefficient")
      ->capture_default_str();
  cmd.add_option("--nms", flags.nms, "Per-class NMS IoU threshold")
      ->capture_default_str();
  cmd.add_option("--top-c", flags.top_c, "Candidate steps kept per proposal")
      ->capture_default_str();
  cmd.add_option("--threads", flags.threads,
                 "Worker threads (0: hardware, capped by STEPCOIN_THREADS)");
}

// Runs localization on every proposal set. A video whose proposal list is
// empty contributes no detections.
std::vector<VideoDetections> Localize(const std::vector<ProposalSet>& sets,
                                      const Lexicon& lexicon,
                                      const LocalizeFlags& flags) {
  const LocalizationOptions options = flags.Options();
  ValidateLocalizationOptions(options);
  const StepTaskMatrix w = BuildIncidenceMatrix(lexicon);
  std::vector<VideoDetections> out(sets.size());
  ParallelFor(sets.size(), ResolveThreadCount(flags.threads),
              [&](std::size_t i) {
                out[i].video_id = sets[i].video_id;
                if (sets[i].proposals.empty()) return;
                if (flags.with_tc) {
                  LocalizationResult r = LocalizeSteps(sets[i], w, options);
                  out[i].task_id = r.task;
                  out[i].detections = std::move(r.detections);
                } else {
                  out[i].detections = LocalizeStepsUnrefined(sets[i], options);
                }
              });
  return out;
}

std::vector<double> ParseAlphas(const std::string& text) {
  std::vector<double> alphas;
  for (const std::string& part : CLI::detail::split(text, ',')) {
    const std::string trimmed = CLI::detail::trim_copy(part);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(trimmed, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != trimmed.size()) {
      throw CLI::ValidationError("--alphas", "not a number: '" + trimmed + "'");
    }
    alphas.push_back(value);
  }
  return alphas;
}

int CmdValidate(const std::string& lexicon_path,
                const std::string& annotations_path, std::ostream& out) {
  std::optional<Lexicon> lexicon;
  try {
    lexicon = LoadLexiconFile(lexicon_path);
  } catch (const Error& e) {
    Print(out, fmt::format("{}: FAIL\n  {}: {}\n", lexicon_path,
                           ErrorCodeName(e.code()), e.what()));
    return kExitFailure;
  }
  Print(out, fmt::format("{}: OK ({} domains, {} tasks, {} steps)\n",
                         lexicon_path, lexicon->domains().size(),
                         lexicon->num_tasks(), lexicon->num_steps()));
  try {
    const auto videos = LoadAnnotationsFile(annotations_path, *lexicon);
    std::size_t segments = 0;
    for (const VideoAnnotation& v : videos) segments += v.segments.size();
    Print(out, fmt::format("{}: OK ({} videos, {} segments)\n",
                           annotations_path, videos.size(), segments));
  } catch (const Error& e) {
    Print(out, fmt::format("{}: FAIL\n  {}: {}\n", annotations_path,
                           ErrorCodeName(e.code()), e.what()));
    return kExitFailure;
  }
  Print(out, "OK\n");
  return kExitOk;
}

struct EvalLocArgs {
  std::string gt_path;
  std::string proposals_path;
  std::string lexicon_path;
  LocalizeFlags localize;
  std::string alphas;
  int max_detections = 0;
  std::string out_json;
  std::string out_text;
};

int CmdEvalLoc(const EvalLocArgs& args, std::ostream& out) {
  const Lexicon lexicon = LoadLexiconFile(args.lexicon_path);
  const auto gt = LoadAnnotationsFile(args.gt_path, lexicon);
  const auto proposals =
      LoadProposalsFile(args.proposals_path, lexicon.num_steps());

  EvalConfig config;
  if (!args.alphas.empty()) config.alphas = ParseAlphas(args.alphas);
  config.max_detections_per_video = args.max_detections;
  config.num_threads = ResolveThreadCount(args.localize.threads);
  ValidateEvalConfig(config);

  DetectionsByVideo detections;
  for (VideoDetections& v : Localize(proposals, lexicon, args.localize)) {
    detections.emplace(std::move(v.video_id), std::move(v.detections));
  }
  const EvalReport report = Evaluate(detections, gt, lexicon, config);
  const std::string table = FormatReportTable(report);
  if (!args.out_json.empty()) WriteFileAtomic(args.out_json, SerializeReport(report));
  if (!args.out_text.empty()) WriteFileAtomic(args.out_text, table);
  Print(out, table);
  return kExitOk;
}

int CmdEvalSeg(const std::string& gt_path, const std::string& pred_path,
               const std::string& lexicon_path, double fps, std::ostream& out) {
  if (!(fps > 0.0)) Throw(ErrorCode::kInvalidArgument, "--fps must be positive");
  const Lexicon lexicon = LoadLexiconFile(lexicon_path);
  const auto gt = LoadAnnotationsFile(gt_path, lexicon);
  const auto predicted = LoadFrameLabels(ReadFile(pred_path));

  std::map<std::string, const FrameLabelSequence*> by_id;
  for (const FrameLabelSequence& p : predicted) by_id.emplace(p.video_id, &p);
  std::vector<FrameLabelSequence> truth;
  std::vector<FrameLabelSequence> aligned;
  for (const VideoAnnotation& v : gt) {
    auto it = by_id.find(v.video_id);
    if (it == by_id.end()) {
      Throw(ErrorCode::kLengthMismatch,
            "no prediction for video '" + v.video_id + "'");
    }
    truth.push_back(SegmentsToFrameLabels(v, fps));
    aligned.push_back(*it->second);
  }
  const double accuracy = FrameAccuracy(aligned, truth);
  Print(out, fmt::format("frame accuracy: {:.2f}\n", 100.0 * accuracy));
  return kExitOk;
}

int CmdRefine(const std::string& proposals_path,
              const std::string& lexicon_path, const LocalizeFlags& flags,
              const std::string& out_path, std::ostream& out) {
  const Lexicon lexicon = LoadLexiconFile(lexicon_path);
  const auto proposals = LoadProposalsFile(proposals_path, lexicon.num_steps());
  const auto result = Localize(proposals, lexicon, flags);
  std::size_t count = 0;
  for (const VideoDetections& v : result) count += v.detections.size();
  WriteFileAtomic(out_path, SerializeDetections(result));
  Print(out, fmt::format("{} videos, {} detections -> {}\n", result.size(),
                         count, out_path));
  return kExitOk;
}

struct SynthArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> videos;
  std::optional<double> jitter;
  std::optional<double> noise;
  std::optional<double> contamination;
  std::optional<double> dropout;
  int threads = 0;
};

int CmdSynth(const SynthArgs& args, std::ostream& out) {
  SynthConfig config;
  if (!args.config_path.empty()) {
    config = ParseSynthConfig(ReadFile(args.config_path));
  }
  if (args.seed) config.seed = *args.seed;
  if (args.videos) config.num_videos = *args.videos;
  if (args.jitter) config.noise.boundary_jitter_sd = *args.jitter;
  if (args.noise) config.noise.score_noise_sd = *args.noise;
  if (args.contamination) config.noise.contamination_rate = *args.contamination;
  if (args.dropout) config.noise.dropout_rate = *args.dropout;
  ValidateSynthConfig(config);

  const int threads = ResolveThreadCount(args.threads);
  const SyntheticCorpus corpus = GenerateCorpus(config, threads);
  const auto proposals = GenerateProposals(corpus.videos, corpus.lexicon,
                                           config.noise, config.seed, threads);
  const fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    Throw(ErrorCode::kIoError,
          "cannot create '" + dir.string() + "': " + ec.message());
  }
  WriteFileAtomic(dir / "config.json", SerializeSynthConfig(config));
  WriteFileAtomic(dir / "lexicon.json", SerializeLexicon(corpus.lexicon));
  WriteFileAtomic(dir / "annotations.json", SerializeAnnotations(corpus.videos));
  WriteFileAtomic(dir / "proposals.json",
                  SerializeProposals(proposals, corpus.lexicon.num_steps()));
  Print(out, fmt::format("wrote {} videos ({} tasks, {} steps) to {}\n",
                         corpus.videos.size(), corpus.lexicon.num_tasks(),
                         corpus.lexicon.num_steps(), dir.string()));
  return kExitOk;
}

struct RenderArgs {
  std::string lexicon_path;
  std::string gt_path;
  std::vector<std::string> detection_paths;
  std::string video_id;
  std::string out_path;
  int width = 72;
};

int CmdRender(const RenderArgs& args, std::ostream& out) {
  const Lexicon lexicon = LoadLexiconFile(args.lexicon_path);
  const auto gt = LoadAnnotationsFile(args.gt_path, lexicon);
  auto video = std::find_if(gt.begin(), gt.end(), [&](const VideoAnnotation& v) {
    return v.video_id == args.video_id;
  });
  if (video == gt.end()) {
    Throw(ErrorCode::kUnknownVideo, "video '" + args.video_id + "' not in " +
                                        args.gt_path);
  }
  std::vector<TimelineLane> lanes = {LaneFromAnnotation("GT", *video)};
  for (const std::string& path : args.detection_paths) {
    const auto runs = LoadDetectionsFile(path, lexicon.num_steps());
    auto run = std::find_if(runs.begin(), runs.end(), [&](const VideoDetections& v) {
      return v.video_id == args.video_id;
    });
    if (run == runs.end()) {
      Throw(ErrorCode::kUnknownVideo,
            "video '" + args.video_id + "' not in " + path);
    }
    if (run->detections.empty()) continue;
    lanes.push_back(
        LaneFromDetections(fs::path(path).stem().string(), run->detections));
  }
  WriteFileAtomic(args.out_path,
                  RenderTimelineSvg(video->duration, lanes, &lexicon));
  Print(out, RenderTimelineAscii(video->duration, lanes, &lexicon, args.width));
  return kExitOk;
}

int CmdServe(const std::string& data_dir, const std::string& host, int port,
             const std::string& port_file, std::ostream& out) {
  g_shutdown = false;
  AnnotationService service(data_dir);
  HttpServer server(service);
  const int bound = port == 0 ? server.BindToAnyPort(host) : server.Bind(host, port);
  if (!port_file.empty()) WriteFileAtomic(port_file, std::to_string(bound) + "\n");
  Print(out, fmt::format("serving {} project(s) from {} on http://{}:{}\n",
                         service.ListProjects().size(), data_dir, host, bound));
  std::jthread watcher([&server](std::stop_token stop) {
    while (!stop.stop_requested() && !g_shutdown.load()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    server.Stop();
  });
  server.Listen();
  watcher.request_stop();
  return kExitOk;
}

}  // namespace

void RequestShutdown() { g_shutdown.store(true); }

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Step localization, evaluation and annotation toolkit",
               "stepcoin"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stepcoin 0.1.0");

  std::string lexicon_path;
  std::string gt_path;
  std::string proposals_path;
  std::string pred_path;
  std::string out_path;

  auto* validate = app.add_subcommand(
      "validate", "Validate a lexicon and an annotation file");
  validate->add_option("lexicon", lexicon_path)->required()->check(CLI::ExistingFile);
  validate->add_option("annotations", gt_path)->required()->check(CLI::ExistingFile);

  EvalLocArgs eval_loc;
  auto* eval_loc_cmd = app.add_subcommand(
      "eval-loc", "Step localization mAP/mAR of a proposal file");
  eval_loc_cmd->add_option("gt", eval_loc.gt_path)->required()->check(CLI::ExistingFile);
  eval_loc_cmd->add_option("proposals", eval_loc.proposals_path)
      ->required()
      ->check(CLI::ExistingFile);
  eval_loc_cmd->add_option("lexicon", eval_loc.lexicon_path)
      ->required()
      ->check(CLI::ExistingFile);
  eval_loc_cmd->add_flag("--with-tc", eval_loc.localize.with_tc,
                         "Apply task-consistency refinement before NMS");
  AddLocalizeFlags(*eval_loc_cmd, eval_loc.localize);
  eval_loc_cmd->add_option("--alphas", eval_loc.alphas,
                           "Comma-separated IoU thresholds (default 0.1,...,0.5)");
  eval_loc_cmd->add_option("--max-dets", eval_loc.max_detections,
                           "Per-video detection cap for mAR (0: none)");
  eval_loc_cmd->add_option("--out-json", eval_loc.out_json, "JSON report path");
  eval_loc_cmd->add_option("--out-text", eval_loc.out_text, "Text table path");

  double seg_fps = 10.0;
  auto* eval_seg = app.add_subcommand(
      "eval-seg", "Frame accuracy of predicted frame labels");
  eval_seg->add_option("gt", gt_path)->required()->check(CLI::ExistingFile);
  eval_seg->add_option("predicted", pred_path)->required()->check(CLI::ExistingFile);
  eval_seg->add_option("--lexicon", lexicon_path, "Lexicon of the annotations")
      ->required()
      ->check(CLI::ExistingFile);
  eval_seg->add_option("--fps", seg_fps, "Frame sampling rate")->capture_default_str();

  LocalizeFlags refine_flags;
  bool no_tc = false;
  auto* refine = app.add_subcommand(
      "refine", "Turn proposals into final detections");
  refine->add_option("proposals", proposals_path)->required()->check(CLI::ExistingFile);
  refine->add_option("lexicon", lexicon_path)->required()->check(CLI::ExistingFile);
  refine->add_option("-o,--out", out_path, "Detection file to write")->required();
  refine->add_flag("--no-tc", no_tc, "Skip task-consistency refinement");
  AddLocalizeFlags(*refine, refine_flags);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Write a synthetic fixture directory");
  synth->add_option("-o,--out", synth_args.out_dir, "Output directory")->required();
  synth->add_option("--config", synth_args.config_path, "Synth config JSON")
      ->check(CLI::ExistingFile);
  synth->add_option("--seed", synth_args.seed);
  synth->add_option("--videos", synth_args.videos);
  synth->add_option("--jitter", synth_args.jitter, "Boundary jitter sd (s)");
  synth->add_option("--noise", synth_args.noise, "Score noise sd");
  synth->add_option("--contamination", synth_args.contamination);
  synth->add_option("--dropout", synth_args.dropout);
  synth->add_option("--threads", synth_args.threads);

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "Render a step timeline");
  render->add_option("lexicon", render_args.lexicon_path)
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("gt", render_args.gt_path)->required()->check(CLI::ExistingFile);
  render->add_option("-d,--detections", render_args.detection_paths,
                     "Detection file; one lane per file")
      ->check(CLI::ExistingFile);
  render->add_option("--video", render_args.video_id)->required();
  render->add_option("-o,--out", render_args.out_path, "SVG path")->required();
  render->add_option("--width", render_args.width, "ASCII columns")
      ->check(CLI::PositiveNumber);

  std::string data_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string port_file;
  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  serve->add_option("--data", data_dir, "Data directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port, "0 picks a free port")
      ->capture_default_str()
      ->check(CLI::Range(0, 65535));
  serve->add_option("--port-file", port_file, "Write the bound port here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return CmdValidate(lexicon_path, gt_path, out);
    if (*eval_loc_cmd) return CmdEvalLoc(eval_loc, out);
    if (*eval_seg) return CmdEvalSeg(gt_path, pred_path, lexicon_path, seg_fps, out);
    if (*refine) {
      refine_flags.with_tc = !no_tc;
      return CmdRefine(proposals_path, lexicon_path, refine_flags, out_path, out);
    }
    if (*synth) return CmdSynth(synth_args, out);
    if (*render) return CmdRender(render_args, out);
    if (*serve) return CmdServe(data_dir, host, port, port_file, out);
  } catch (const CLI::ValidationError& e) {
    Print(err, fmt::format("error: {}\n", e.what()));
    return kExitUsage;
  } catch (const Error& e) {
    Print(err, fmt::format("error: {}: {}\n", ErrorCodeName(e.code()), e.what()));
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace stepcoin::cli
