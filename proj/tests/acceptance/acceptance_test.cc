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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "cli.h"
#include "stepcoin/annotation.h"
#include "stepcoin/consistency.h"
#include "stepcoin/error.h"
#include "stepcoin/io.h"
#include "stepcoin/lexicon.h"
#include "stepcoin/metrics.h"
#include "stepcoin/report.h"
#include "stepcoin/rng.h"
#include "stepcoin/synthgen.h"
#include "support/oracles.h"

namespace stepcoin {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class ScratchDir {
 public:
  ScratchDir() {
    std::string pattern = (fs::temp_directory_path() / "stepcoin-accept-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) Throw(ErrorCode::kIoError, "mkdtemp failed");
    path_ = pattern;
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

int RunCli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "stepcoin");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out_stream;
  std::ostringstream err_stream;
  const int code =
      cli::Run(static_cast<int>(argv.size()), argv.data(), out_stream, err_stream);
  if (out != nullptr) *out = out_stream.str();
  if (code != 0) std::cerr << err_stream.str();
  return code;
}

DetectionsByVideo LocalizeAll(const std::vector<ProposalSet>& sets, const Lexicon& lexicon,
                              bool with_tc, const LocalizationOptions& options = {}) {
  const StepTaskMatrix w = BuildIncidenceMatrix(lexicon);
  DetectionsByVideo out;
  for (const ProposalSet& set : sets) {
    DetectionList& dets = out[set.video_id];
    if (set.proposals.empty()) continue;
    dets = with_tc ? LocalizeSteps(set, w, options).detections
                   : LocalizeStepsUnrefined(set, options);
  }
  return out;
}

Outcome PerfectOracle() {
  ScratchDir dir;
  const auto start = Clock::now();
  if (RunCli({"synth", "-o", dir / "c", "--seed", "42", "--videos", "200", "--jitter", "0",
              "--noise", "0", "--contamination", "0", "--dropout", "0"}) != 0) {
    return {false, "synth failed"};
  }
  std::string table;
  if (RunCli({"eval-loc", dir / "c/annotations.json", dir / "c/proposals.json",
              dir / "c/lexicon.json", "--out-json", dir / "r.json"},
             &table) != 0) {
    return {false, "eval-loc failed"};
  }
  const double seconds = SecondsSince(start);
  const EvalReport report = ParseReport(ReadFile(dir / "r.json"));
  bool exact = report.per_alpha.size() == kDefaultAlphas.size();
  for (std::size_t i = 0; exact && i < report.per_alpha.size(); ++i) {
    const AlphaResult& a = report.per_alpha[i];
    exact = a.alpha == kDefaultAlphas[i] && a.map == 100.0 && a.mar == 100.0;
  }
  for (const TableRow& row : ParseReportTable(table)) {
    exact = exact && row.map == 100.0 && row.mar == 100.0;
  }
  return {exact && seconds < 5.0,
          fmt::format("{} videos, {} GT, mAP=mAR=100.00 at all alphas: {}, {:.2f} s",
                      report.num_videos, report.num_ground_truth, exact ? "yes" : "no",
                      seconds)};
}

// Random micro-instance: 2 videos, 3 classes, at most 3 GT and 4 detections
// per class. Coarse grids make score and IoU ties common.
struct MicroInstance {
  std::vector<VideoAnnotation> gt;
  DetectionsByVideo detections;
  double alpha = 0.5;
};

MicroInstance MakeMicroInstance(Rng& rng) {
  constexpr int kClasses = 3;
  constexpr int kSlots = 10;
  MicroInstance inst;
  inst.gt = {{"va", 0, 40.0, {}}, {"vb", 0, 40.0, {}}};
  std::vector<std::vector<bool>> used(2, std::vector<bool>(kSlots, false));
  for (int c = 0; c < kClasses; ++c) {
    const int num_gt = static_cast<int>(rng.UniformIndex(4));
    for (int g = 0; g < num_gt; ++g) {
      const int v = static_cast<int>(rng.UniformIndex(2));
      int slot = static_cast<int>(rng.UniformIndex(kSlots));
      while (used[v][slot]) slot = (slot + 1) % kSlots;
      used[v][slot] = true;
      const double start = 4.0 * slot + 0.5 * static_cast<double>(rng.UniformIndex(3));
      const double length = 1.0 + static_cast<double>(rng.UniformIndex(3));
      inst.gt[v].segments.push_back({{start, start + length}, c});
    }
    const int num_det = static_cast<int>(rng.UniformIndex(5));
    for (int d = 0; d < num_det; ++d) {
      const std::string video = rng.Bernoulli(0.5) ? "va" : "vb";
      const double start = 0.5 * static_cast<double>(rng.UniformIndex(76));
      const double length = 0.5 * static_cast<double>(1 + rng.UniformIndex(8));
      const double score = 0.25 * static_cast<double>(1 + rng.UniformIndex(4));
      inst.detections[video].push_back({{start, start + length}, c, score});
    }
  }
  for (VideoAnnotation& v : inst.gt) {
    std::sort(v.segments.begin(), v.segments.end(),
              [](const Segment& a, const Segment& b) {
                return a.interval.start < b.interval.start;
              });
  }
  const double alphas[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.7};
  inst.alpha = alphas[rng.UniformIndex(6)];
  return inst;
}

Outcome BruteForceAp() {
  const Lexicon lexicon = Lexicon::Create(
      "micro", {{0, "d"}}, {{0, 0, "t"}}, {{0, 0, "a"}, {1, 0, "b"}, {2, 0, "c"}});
  Rng rng(20240501, 0);
  int mismatches = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const MicroInstance inst = MakeMicroInstance(rng);
    // Per class and per video.
    for (const VideoAnnotation& v : inst.gt) {
      auto it = inst.detections.find(v.video_id);
      const DetectionList none;
      const DetectionList& all = it == inst.detections.end() ? none : it->second;
      for (int c = 0; c < 3; ++c) {
        DetectionList dets;
        std::vector<Segment> gts;
        for (const Detection& d : all) {
          if (d.step_id == c) dets.push_back(d);
        }
        for (const Segment& s : v.segments) {
          if (s.step_id == c) gts.push_back(s);
        }
        if (gts.empty()) continue;
        const double diff = std::abs(AveragePrecision(dets, gts, inst.alpha) -
                                     oracle::AveragePrecision(dets, gts, inst.alpha));
        worst = std::max(worst, diff);
        if (!(diff <= 1e-9)) ++mismatches;
      }
    }
    // Pooled across both videos.
    const double diff =
        std::abs(MeanAp(inst.detections, inst.gt, inst.alpha, lexicon).mean / 100.0 -
                 oracle::MeanAp(inst.detections, inst.gt, inst.alpha, 3) / 100.0);
    worst = std::max(worst, diff);
    if (!(diff <= 1e-9)) ++mismatches;
  }
  return {mismatches == 0,
          fmt::format("500 instances, {} mismatches, max |diff| {:.3g}", mismatches, worst)};
}

Outcome RefinementDirection() {
  int improved = 0;
  double sum_with = 0.0;
  double sum_without = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthConfig config;
    config.seed = seed;
    config.noise.contamination_rate = 0.3;
    config.noise.score_noise_sd = 0.1;
    config.noise.boundary_jitter_sd = 1.0;
    const SyntheticCorpus corpus = GenerateCorpus(config);
    const auto proposals =
        GenerateProposals(corpus.videos, corpus.lexicon, config.noise, config.seed);
    EvalConfig eval;
    eval.alphas = {0.5};
    const double without =
        Evaluate(LocalizeAll(proposals, corpus.lexicon, false), corpus.videos,
                 corpus.lexicon, eval)
            .per_alpha[0]
            .map;
    const double with =
        Evaluate(LocalizeAll(proposals, corpus.lexicon, true), corpus.videos,
                 corpus.lexicon, eval)
            .per_alpha[0]
            .map;
    if (with > without) ++improved;
    sum_with += with;
    sum_without += without;
  }
  const double gain = (sum_with - sum_without) / 20.0;
  return {improved >= 18 && gain > 0.0,
          fmt::format("TC better in {}/20 seeds, mean mAP@0.5 {:.2f} -> {:.2f}", improved,
                      sum_without / 20.0, sum_with / 20.0)};
}

ProposalSet RandomProposalSet(Rng& rng, int num_steps, const std::string& id) {
  ProposalSet set{id, {}};
  const int count = 1 + static_cast<int>(rng.UniformIndex(12));
  for (int n = 0; n < count; ++n) {
    const double start = rng.Uniform() * 100.0;
    Proposal p{{start, start + 0.5 + rng.Uniform() * 20.0},
               std::vector<double>(num_steps)};
    for (double& s : p.scores) s = rng.Uniform();
    // A few strong candidates per proposal.
    for (int k = 0; k < 3; ++k) p.scores[rng.UniformIndex(num_steps)] += 2.0 * rng.Uniform();
    set.proposals.push_back(std::move(p));
  }
  return set;
}

Outcome RefinementExactness() {
  const Lexicon lexicon = CoinShapedLexicon();
  const StepTaskMatrix w = BuildIncidenceMatrix(lexicon);
  Rng rng(7, 1);
  long off_task = 0;
  long in_task = 0;
  int score_failures = 0;
  int limit_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ProposalSet set =
        RandomProposalSet(rng, lexicon.num_steps(), "v" + std::to_string(trial));
    for (double gamma : {kDefaultGamma, 0.5, 0.01}) {
      const TaskScore task = PredictTask(AggregateScores(set), w);
      const ProposalSet refined = RefineScores(set, RefineMask(w, task.predicted_task, gamma));
      for (std::size_t n = 0; n < set.proposals.size(); ++n) {
        for (int k = 0; k < lexicon.num_steps(); ++k) {
          const double raw = set.proposals[n].scores[k];
          const double out = refined.proposals[n].scores[k];
          if (lexicon.TaskOfStep(k) == task.predicted_task) {
            ++in_task;
            if (out != raw) ++score_failures;
          } else {
            ++off_task;
            if (out != gamma * raw) ++score_failures;
          }
        }
      }
    }
    // gamma -> 1: the refined pipeline converges to the unrefined one.
    LocalizationOptions near_one;
    near_one.gamma = 1.0 - 1e-12;
    const DetectionList refined = LocalizeSteps(set, w, near_one).detections;
    const DetectionList plain = LocalizeStepsUnrefined(set, near_one);
    bool same = refined.size() == plain.size();
    for (std::size_t i = 0; same && i < refined.size(); ++i) {
      same = refined[i].interval == plain[i].interval &&
             refined[i].step_id == plain[i].step_id &&
             std::abs(refined[i].score - plain[i].score) <= 1e-9 * std::abs(plain[i].score);
    }
    if (!same) ++limit_failures;
  }
  return {score_failures == 0 && limit_failures == 0,
          fmt::format("{} off-task and {} in-task scores checked, {} wrong; gamma->1 "
                      "differs in {}/100 sets",
                      off_task, in_task, score_failures, limit_failures)};
}

Outcome RandomSegmentationBaseline() {
  const auto start = Clock::now();
  SynthConfig config;
  config.seed = 3;
  config.num_videos = 2400;
  const SyntheticCorpus corpus = GenerateCorpus(config);
  const int num_labels = corpus.lexicon.num_steps();
  Rng rng(99, 0);
  std::vector<FrameLabelSequence> truth;
  std::vector<FrameLabelSequence> predicted;
  long frames = 0;
  for (const VideoAnnotation& v : corpus.videos) {
    // Only step frames: the random predictor draws from the step labels.
    FrameLabelSequence gt = SegmentsToFrameLabels(v, 10.0);
    std::erase(gt.labels, kBackground);
    FrameLabelSequence guess{v.video_id, gt.fps, {}};
    guess.labels.reserve(gt.labels.size());
    for (std::size_t i = 0; i < gt.labels.size(); ++i) {
      guess.labels.push_back(static_cast<int>(rng.UniformIndex(num_labels)));
    }
    frames += static_cast<long>(gt.labels.size());
    truth.push_back(std::move(gt));
    predicted.push_back(std::move(guess));
  }
  const double accuracy = 100.0 * FrameAccuracy(predicted, truth);
  const double seconds = SecondsSince(start);
  const bool pass = frames >= 1000000 && std::abs(accuracy - 0.13) <= 0.05 && seconds < 10.0;
  return {pass, fmt::format("{} labels, {} frames, accuracy {:.4f}% (1/K = {:.4f}%), {:.2f} s",
                            num_labels, frames, accuracy, 100.0 / num_labels, seconds)};
}

Outcome ArgmaxInvariance() {
  const Lexicon lexicon = CoinShapedLexicon();
  const StepTaskMatrix w = BuildIncidenceMatrix(lexicon);
  Rng rng(11, 2);
  int changed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ProposalSet set = RandomProposalSet(rng, lexicon.num_steps(), "v");
    const int base = PredictTask(AggregateScores(set), w).predicted_task;
    for (double c : {1e-3, 1.0, 1e3}) {
      ProposalSet scaled = set;
      for (Proposal& p : scaled.proposals) {
        for (double& s : p.scores) s *= c;
      }
      if (PredictTask(AggregateScores(scaled), w).predicted_task != base ||
          LocalizeSteps(scaled, w).task != base) {
        ++changed;
      }
    }
  }
  return {changed == 0, fmt::format("100 sets x 3 scales, {} predictions changed", changed)};
}

Outcome Monotonicity() {
  Rng rng(5, 3);
  int violations = 0;
  for (int corpus_index = 0; corpus_index < 50; ++corpus_index) {
    SynthConfig config;
    config.seed = 1000 + static_cast<std::uint64_t>(corpus_index);
    config.num_videos = 20 + static_cast<int>(rng.UniformIndex(30));
    config.noise.boundary_jitter_sd = 4.0 * rng.Uniform();
    config.noise.score_noise_sd = 0.3 * rng.Uniform();
    config.noise.contamination_rate = 0.5 * rng.Uniform();
    config.noise.dropout_rate = 0.3 * rng.Uniform();
    const SyntheticCorpus corpus = GenerateCorpus(config);
    const auto proposals =
        GenerateProposals(corpus.videos, corpus.lexicon, config.noise, config.seed);
    const bool with_tc = corpus_index % 2 == 1;
    const EvalReport report = Evaluate(LocalizeAll(proposals, corpus.lexicon, with_tc),
                                       corpus.videos, corpus.lexicon);
    for (std::size_t i = 1; i < report.per_alpha.size(); ++i) {
      if (report.per_alpha[i].map > report.per_alpha[i - 1].map ||
          report.per_alpha[i].mar > report.per_alpha[i - 1].mar) {
        ++violations;
      }
    }
  }
  return {violations == 0,
          fmt::format("50 corpora x 5 alphas, {} increases in mAP or mAR", violations)};
}

Outcome Determinism() {
  ScratchDir dir;
  std::vector<std::string> reports;
  for (const char* name : {"a", "b"}) {
    const std::string out = dir / name;
    if (RunCli({"synth", "-o", out, "--seed", "7", "--videos", "80", "--jitter", "1.5",
                "--noise", "0.15", "--contamination", "0.25", "--dropout", "0.1"}) != 0) {
      return {false, "synth failed"};
    }
  }
  for (const auto& [name, threads] :
       std::vector<std::pair<std::string, std::string>>{{"a", "1"}, {"b", "1"}, {"a", "8"}}) {
    const std::string report = dir / (name + "-" + threads + ".json");
    if (RunCli({"eval-loc", dir / (name + "/annotations.json"),
                dir / (name + "/proposals.json"), dir / (name + "/lexicon.json"),
                "--with-tc", "--threads", threads, "--out-json", report}) != 0) {
      return {false, "eval-loc failed"};
    }
    reports.push_back(ReadFile(report));
  }
  bool inputs_same = true;
  for (const char* f : {"lexicon.json", "annotations.json", "proposals.json"}) {
    inputs_same = inputs_same && ReadFile(dir / (std::string("a/") + f)) ==
                                     ReadFile(dir / (std::string("b/") + f));
  }
  const bool reruns_same = reports[0] == reports[1];
  const bool threads_same = reports[0] == reports[2];
  return {inputs_same && reruns_same && threads_same,
          fmt::format("synth outputs identical: {}, reports identical: {}, 8 threads == 1: {}",
                      inputs_same, reruns_same, threads_same)};
}

Outcome FormatRoundTrips() {
  SynthConfig config;
  config.seed = 17;
  config.num_videos = 40;
  config.noise.boundary_jitter_sd = 1.0;
  config.noise.score_noise_sd = 0.1;
  config.noise.contamination_rate = 0.2;
  const SyntheticCorpus corpus = GenerateCorpus(config);
  const auto proposals =
      GenerateProposals(corpus.videos, corpus.lexicon, config.noise, config.seed);
  const int k = corpus.lexicon.num_steps();
  const EvalReport report =
      Evaluate(LocalizeAll(proposals, corpus.lexicon, true), corpus.videos, corpus.lexicon);

  std::vector<std::string> failed;
  const Lexicon coin = CoinShapedLexicon();
  for (const Lexicon* lex : {&coin, &corpus.lexicon}) {
    const Lexicon back = LoadLexicon(SerializeLexicon(*lex));
    if (!(back == *lex) || SerializeLexicon(back) != SerializeLexicon(*lex)) {
      failed.push_back("lexicon");
    }
  }
  const auto annotations = LoadAnnotations(SerializeAnnotations(corpus.videos), corpus.lexicon);
  if (annotations != corpus.videos) failed.push_back("annotation");
  if (LoadProposals(SerializeProposals(proposals, k), k) != proposals) {
    failed.push_back("proposal");
  }
  const EvalReport parsed = ParseReport(SerializeReport(report));
  if (!(parsed == report) || SerializeReport(parsed) != SerializeReport(report)) {
    failed.push_back("report");
  }
  std::string detail = "lexicon, annotation, proposal, report";
  if (!failed.empty()) {
    detail = "mismatch in:";
    for (const std::string& f : failed) detail += " " + f;
  }
  return {failed.empty(), detail};
}

}  // namespace
}  // namespace stepcoin

int main() {
  using stepcoin::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"perfect-proposal oracle", stepcoin::PerfectOracle},
      {"brute-force AP equivalence", stepcoin::BruteForceAp},
      {"refinement direction", stepcoin::RefinementDirection},
      {"refinement exactness", stepcoin::RefinementExactness},
      {"random segmentation baseline", stepcoin::RandomSegmentationBaseline},
      {"argmax invariance", stepcoin::ArgmaxInvariance},
      {"metric monotonicity", stepcoin::Monotonicity},
      {"determinism", stepcoin::Determinism},
      {"format round trips", stepcoin::FormatRoundTrips},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : fmt::format("{} criteria failed", failures))
            << std::endl;
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
