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

#include "stepcoin/synthgen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "json_util.h"
#include "stepcoin/error.h"
#include "stepcoin/parallel.h"
#include "stepcoin/rng.h"

namespace stepcoin {

using internal::Json;

namespace {

// Stream ids. Video streams are offset so they can never collide with the
// lexicon stream.
constexpr std::uint64_t kLexiconStream = 1;
constexpr std::uint64_t kVideoStreamBase = 1ULL << 32;
constexpr std::uint64_t kProposalSeedSalt = 0x50524F504F53414CULL;

// Log-normal shape parameters; only the means are calibrated.
constexpr double kVideoDurationSigma = 0.5;
constexpr double kSegmentDurationSigma = 0.6;

// All generated times are integral multiples of 0.1 s.
constexpr double kTicksPerSecond = 10.0;

constexpr std::uint64_t kCoinLexiconSeed = 2019;

[[noreturn]] void Bad(const std::string& message) {
  Throw(ErrorCode::kInvalidArgument, message);
}

bool IsRate(double p) { return p >= 0.0 && p <= 1.0; }

long long ToTicks(double seconds) {
  return std::max(1LL, std::llround(seconds * kTicksPerSecond));
}

double FromTicks(long long ticks) {
  return static_cast<double>(ticks) / kTicksPerSecond;
}

VideoAnnotation GenerateVideo(const SynthConfig& config, const Lexicon& lexicon,
                              int index) {
  Rng rng(config.seed, kVideoStreamBase + static_cast<std::uint64_t>(index));
  VideoAnnotation video;
  video.video_id = fmt::format("vid_{:05d}", index);
  video.task_id = static_cast<int>(rng.UniformIndex(lexicon.num_tasks()));

  long long duration =
      ToTicks(rng.LogNormalWithMean(config.mean_video_duration,
                                    kVideoDurationSigma));
  const int count =
      1 + rng.Poisson(config.mean_segments_per_video - 1.0);

  // Steps appear in lexicon order; repeats only when the video has more
  // segments than its task has steps.
  const auto task_steps = lexicon.StepsOfTask(video.task_id);
  std::vector<int> steps;
  if (count <= static_cast<int>(task_steps.size())) {
    std::vector<int> pool(task_steps.begin(), task_steps.end());
    for (int i = 0; i < count; ++i) {
      const auto j = i + rng.UniformIndex(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    steps.assign(pool.begin(), pool.begin() + count);
  } else {
    for (int i = 0; i < count; ++i) {
      steps.push_back(task_steps[rng.UniformIndex(task_steps.size())]);
    }
  }
  std::sort(steps.begin(), steps.end());

  std::vector<long long> lengths(count);
  long long busy = 0;
  for (long long& len : lengths) {
    len = ToTicks(rng.LogNormalWithMean(config.mean_segment_duration,
                                        kSegmentDurationSigma));
    busy += len;
  }
  // One tick of separation between consecutive segments keeps equal-step
  // neighbours distinct.
  const long long required = busy + (count - 1);
  if (duration < required) duration = required + (required + 9) / 10;

  std::vector<double> weights(count + 1);
  double weight_sum = 0.0;
  for (double& w : weights) {
    w = rng.Exponential();
    weight_sum += w;
  }
  const long long free = duration - required;
  std::vector<long long> gaps(count + 1);
  long long assigned = 0;
  for (int g = 0; g <= count; ++g) {
    gaps[g] = static_cast<long long>(
        std::floor(static_cast<double>(free) * weights[g] / weight_sum));
    assigned += gaps[g];
  }
  gaps[count] += free - assigned;

  long long cursor = gaps[0];
  for (int s = 0; s < count; ++s) {
    video.segments.push_back(
        {{FromTicks(cursor), FromTicks(cursor + lengths[s])}, steps[s]});
    cursor += lengths[s] + gaps[s + 1] + (s + 1 < count ? 1 : 0);
  }
  video.duration = FromTicks(duration);
  return video;
}

ProposalSet ProposalsForVideo(const VideoAnnotation& video,
                              const Lexicon& lexicon, const NoiseModel& noise,
                              std::uint64_t seed) {
  Rng rng(seed ^ kProposalSeedSalt, HashString(video.video_id));
  const int k = lexicon.num_steps();
  const bool has_off_task =
      static_cast<int>(lexicon.StepsOfTask(video.task_id).size()) < k;

  ProposalSet set{video.video_id, {}};
  for (const Segment& segment : video.segments) {
    const bool dropped = rng.Uniform() < noise.dropout_rate;
    const double jitter_start = noise.boundary_jitter_sd * rng.Normal();
    const double jitter_end = noise.boundary_jitter_sd * rng.Normal();
    const double contamination_draw = rng.Uniform();
    if (dropped) continue;

    Interval iv{std::clamp(segment.interval.start + jitter_start, 0.0,
                           video.duration),
                std::clamp(segment.interval.end + jitter_end, 0.0,
                           video.duration)};
    if (iv.end - iv.start < 1.0 / kTicksPerSecond) {
      iv.end = std::min(video.duration, iv.start + 1.0 / kTicksPerSecond);
      iv.start = iv.end - 1.0 / kTicksPerSecond;
    }

    std::vector<double> scores(k, 0.0);
    scores[segment.step_id] = 1.0;
    if (noise.score_noise_sd > 0.0) {
      for (double& s : scores) {
        s = std::max(0.0, s + noise.score_noise_sd * rng.Normal());
      }
    }

    if (contamination_draw < noise.contamination_rate && has_off_task) {
      const auto top = static_cast<int>(
          std::max_element(scores.begin(), scores.end()) - scores.begin());
      int target = 0;
      do {
        target = static_cast<int>(rng.UniformIndex(k));
      } while (lexicon.TaskOfStep(target) == video.task_id);
      const double top_score = scores[top];
      scores[target] = top_score;
      scores[top] = noise.contamination_residual * top_score;
    }
    set.proposals.push_back({iv, std::move(scores)});
  }
  return set;
}

}  // namespace

void ValidateNoiseModel(const NoiseModel& noise) {
  if (!(noise.boundary_jitter_sd >= 0.0) || !(noise.score_noise_sd >= 0.0)) {
    Bad("noise standard deviations must be non-negative");
  }
  if (!IsRate(noise.contamination_rate) || !IsRate(noise.dropout_rate) ||
      !IsRate(noise.contamination_residual)) {
    Bad("noise rates must lie in [0, 1]");
  }
}

void ValidateSynthConfig(const SynthConfig& config) {
  if (config.num_videos < 1) Bad("num_videos must be >= 1");
  const LexiconShape& shape = config.lexicon_shape;
  if (shape.domains < 1 || shape.tasks_per_domain < 1) {
    Bad("lexicon needs at least one domain and one task per domain");
  }
  if (shape.total_steps <= 0 &&
      (shape.min_steps_per_task < 1 ||
       shape.max_steps_per_task < shape.min_steps_per_task)) {
    Bad("steps per task range must satisfy 1 <= min <= max");
  }
  if (shape.total_steps > 0 &&
      shape.total_steps < shape.domains * shape.tasks_per_domain) {
    Throw(ErrorCode::kInfeasibleConfig,
          "total_steps is smaller than the number of tasks");
  }
  if (!(config.mean_video_duration > 0.0) ||
      !(config.mean_segment_duration > 0.0)) {
    Bad("mean durations must be positive");
  }
  if (!(config.mean_segments_per_video >= 1.0)) {
    Bad("mean_segments_per_video must be >= 1");
  }
  ValidateNoiseModel(config.noise);
  const double expected_busy =
      config.mean_segments_per_video * config.mean_segment_duration;
  if (expected_busy > config.mean_video_duration) {
    Throw(ErrorCode::kInfeasibleConfig,
          fmt::format("expected segment time {:.2f} s exceeds mean video "
                      "duration {:.2f} s",
                      expected_busy, config.mean_video_duration));
  }
}

const std::vector<std::string>& CoinDomainNames() {
  static const std::vector<std::string> kNames = {
      "nursing & caring",    "vehicles",          "leisure & performance",
      "gadgets",             "electric appliances", "household items",
      "science & craft",     "plants & fruits",   "snacks & drinks",
      "dishes",              "sports",            "housework"};
  return kNames;
}

Lexicon GenerateLexicon(const LexiconShape& shape, std::uint64_t seed) {
  const int num_tasks = shape.domains * shape.tasks_per_domain;
  Rng rng(seed, kLexiconStream);

  std::vector<int> steps_per_task(num_tasks);
  if (shape.total_steps > 0) {
    std::fill(steps_per_task.begin(), steps_per_task.end(),
              shape.total_steps / num_tasks);
    std::vector<int> order(num_tasks);
    std::iota(order.begin(), order.end(), 0);
    for (int i = num_tasks - 1; i > 0; --i) {
      std::swap(order[i], order[rng.UniformIndex(i + 1)]);
    }
    for (int r = 0; r < shape.total_steps % num_tasks; ++r) {
      ++steps_per_task[order[r]];
    }
  } else {
    const int span = shape.max_steps_per_task - shape.min_steps_per_task + 1;
    for (int& n : steps_per_task) {
      n = shape.min_steps_per_task + static_cast<int>(rng.UniformIndex(span));
    }
  }

  const auto& coin_names = CoinDomainNames();
  std::vector<Domain> domains;
  for (int d = 0; d < shape.domains; ++d) {
    domains.push_back({d, shape.domains <= static_cast<int>(coin_names.size())
                              ? coin_names[d]
                              : fmt::format("domain {}", d)});
  }
  std::vector<Task> tasks;
  std::vector<Step> steps;
  for (int t = 0; t < num_tasks; ++t) {
    tasks.push_back({t, t / shape.tasks_per_domain,
                     fmt::format("task {:03d}", t)});
    for (int s = 0; s < steps_per_task[t]; ++s) {
      steps.push_back({static_cast<int>(steps.size()), t,
                       fmt::format("step {} of task {:03d}", s + 1, t)});
    }
  }
  return Lexicon::Create(fmt::format("synthetic-{}", seed), std::move(domains),
                         std::move(tasks), std::move(steps));
}

Lexicon CoinShapedLexicon() {
  const Lexicon base = GenerateLexicon(LexiconShape{}, kCoinLexiconSeed);
  return Lexicon::Create("coin-shaped-1", base.domains(), base.tasks(),
                         base.steps());
}

SyntheticCorpus GenerateCorpus(const SynthConfig& config, int num_threads) {
  ValidateSynthConfig(config);
  SyntheticCorpus corpus{GenerateLexicon(config.lexicon_shape, config.seed), {}};
  corpus.videos.resize(config.num_videos);
  ParallelFor(corpus.videos.size(), num_threads, [&](size_t i) {
    corpus.videos[i] = GenerateVideo(config, corpus.lexicon, static_cast<int>(i));
  });
  return corpus;
}

std::vector<ProposalSet> GenerateProposals(
    const std::vector<VideoAnnotation>& ground_truth, const Lexicon& lexicon,
    const NoiseModel& noise, std::uint64_t seed, int num_threads) {
  ValidateNoiseModel(noise);
  std::vector<ProposalSet> out(ground_truth.size());
  ParallelFor(ground_truth.size(), num_threads, [&](size_t i) {
    out[i] = ProposalsForVideo(ground_truth[i], lexicon, noise, seed);
  });
  return out;
}

SynthConfig ParseSynthConfig(std::string_view json_text) {
  const Json root = internal::ParseJson(json_text, "synth config");
  if (!root.is_object()) {
    Throw(ErrorCode::kParseError, "synth config: expected object");
  }
  SynthConfig config;
  auto read = [](const Json& object, const char* key, auto& field) {
    auto it = object.find(key);
    if (it == object.end()) return;
    try {
      it->get_to(field);
    } catch (const Json::exception&) {
      Throw(ErrorCode::kParseError,
            std::string("synth config: bad value for \"") + key + "\"");
    }
  };
  read(root, "seed", config.seed);
  read(root, "num_videos", config.num_videos);
  read(root, "mean_video_duration", config.mean_video_duration);
  read(root, "mean_segments_per_video", config.mean_segments_per_video);
  read(root, "mean_segment_duration", config.mean_segment_duration);
  if (auto it = root.find("lexicon_shape"); it != root.end()) {
    LexiconShape& shape = config.lexicon_shape;
    read(*it, "domains", shape.domains);
    read(*it, "tasks_per_domain", shape.tasks_per_domain);
    read(*it, "total_steps", shape.total_steps);
    read(*it, "min_steps_per_task", shape.min_steps_per_task);
    read(*it, "max_steps_per_task", shape.max_steps_per_task);
  }
  if (auto it = root.find("noise"); it != root.end()) {
    NoiseModel& noise = config.noise;
    read(*it, "boundary_jitter_sd", noise.boundary_jitter_sd);
    read(*it, "score_noise_sd", noise.score_noise_sd);
    read(*it, "contamination_rate", noise.contamination_rate);
    read(*it, "dropout_rate", noise.dropout_rate);
    read(*it, "contamination_residual", noise.contamination_residual);
  }
  return config;
}

std::string SerializeSynthConfig(const SynthConfig& config) {
  const LexiconShape& shape = config.lexicon_shape;
  const NoiseModel& noise = config.noise;
  Json root = {
      {"seed", config.seed},
      {"num_videos", config.num_videos},
      {"mean_video_duration", config.mean_video_duration},
      {"mean_segments_per_video", config.mean_segments_per_video},
      {"mean_segment_duration", config.mean_segment_duration},
      {"lexicon_shape",
       {{"domains", shape.domains},
        {"tasks_per_domain", shape.tasks_per_domain},
        {"total_steps", shape.total_steps},
        {"min_steps_per_task", shape.min_steps_per_task},
        {"max_steps_per_task", shape.max_steps_per_task}}},
      {"noise",
       {{"boundary_jitter_sd", noise.boundary_jitter_sd},
        {"score_noise_sd", noise.score_noise_sd},
        {"contamination_rate", noise.contamination_rate},
        {"dropout_rate", noise.dropout_rate},
        {"contamination_residual", noise.contamination_residual}}}};
  return internal::Dump(root);
}

}  // namespace stepcoin
