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

#ifndef STEPCOIN_SYNTHGEN_H_
#define STEPCOIN_SYNTHGEN_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stepcoin/annotation.h"
#include "stepcoin/lexicon.h"

namespace stepcoin {

// Seeded synthetic corpora whose ground truth is known exactly, calibrated
// by default to the published COIN statistics: 12 domains, 180 tasks, 778
// steps; videos of 2.36 min on average carrying 3.91 segments of 14.91 s.

struct LexiconShape {
  int domains = 12;
  int tasks_per_domain = 15;
  // When positive, exactly this many steps are spread over the tasks as
  // evenly as possible (the remainder goes to seed-chosen tasks). Otherwise
  // each task draws its step count uniformly from [min, max].
  int total_steps = 778;
  int min_steps_per_task = 3;
  int max_steps_per_task = 6;
};

struct NoiseModel {
  double boundary_jitter_sd = 0.0;  // seconds, per boundary
  double score_noise_sd = 0.0;      // added to every score, clipped at 0
  // Probability that a proposal's top score is moved to a uniformly chosen
  // step of another task.
  double contamination_rate = 0.0;
  // Probability that a ground-truth segment yields no proposal.
  double dropout_rate = 0.0;
  // After contamination the displaced step keeps this fraction of the top
  // score, so it stays the best in-task candidate.
  double contamination_residual = 0.5;
};

struct SynthConfig {
  std::uint64_t seed = 42;
  int num_videos = 100;
  LexiconShape lexicon_shape;
  double mean_video_duration = 141.6;    // seconds
  double mean_segments_per_video = 3.91;
  double mean_segment_duration = 14.91;  // seconds
  NoiseModel noise;
};

// Throws kInvalidArgument for out-of-range fields and kInfeasibleConfig when
// the expected segment time exceeds the expected video duration.
void ValidateNoiseModel(const NoiseModel& noise);
void ValidateSynthConfig(const SynthConfig& config);

// The 12 COIN domain names.
const std::vector<std::string>& CoinDomainNames();

// Placeholder taxonomy of the requested shape. Domain names come from
// CoinDomainNames() when there are at most 12 domains.
Lexicon GenerateLexicon(const LexiconShape& shape, std::uint64_t seed);

// 12 / 180 / 778 placeholder lexicon used as the COIN-shaped fixture.
Lexicon CoinShapedLexicon();

struct SyntheticCorpus {
  Lexicon lexicon;
  std::vector<VideoAnnotation> videos;  // sorted by video_id
};

// Each video draws from its own stream, so the corpus is identical for any
// num_threads.
SyntheticCorpus GenerateCorpus(const SynthConfig& config, int num_threads = 1);

// One proposal per surviving ground-truth segment: the segment interval with
// jittered boundaries and a one-hot score on the true step plus clipped
// Gaussian noise, then possibly contaminated. Streams are keyed by video id.
std::vector<ProposalSet> GenerateProposals(
    const std::vector<VideoAnnotation>& ground_truth, const Lexicon& lexicon,
    const NoiseModel& noise, std::uint64_t seed, int num_threads = 1);

// JSON form of SynthConfig. Missing keys keep their defaults.
SynthConfig ParseSynthConfig(std::string_view json_text);
std::string SerializeSynthConfig(const SynthConfig& config);

}  // namespace stepcoin

#endif  // STEPCOIN_SYNTHGEN_H_
