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

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

#include "stepcoin/consistency.h"
#include "stepcoin/lexicon.h"
#include "stepcoin/metrics.h"
#include "stepcoin/synthgen.h"

namespace stepcoin {
namespace {

SynthConfig NoisyConfig(int videos) {
  SynthConfig config;
  config.num_videos = videos;
  config.noise.boundary_jitter_sd = 1.0;
  config.noise.score_noise_sd = 0.1;
  config.noise.contamination_rate = 0.3;
  return config;
}

void BM_BuildIncidenceMatrix(benchmark::State& state) {
  const Lexicon lexicon = CoinShapedLexicon();
  for (auto _ : state) benchmark::DoNotOptimize(BuildIncidenceMatrix(lexicon));
}
BENCHMARK(BM_BuildIncidenceMatrix);

void BM_LocalizeSteps(benchmark::State& state) {
  const SynthConfig config = NoisyConfig(50);
  const SyntheticCorpus corpus = GenerateCorpus(config);
  const auto proposals =
      GenerateProposals(corpus.videos, corpus.lexicon, config.noise, config.seed);
  const StepTaskMatrix w = BuildIncidenceMatrix(corpus.lexicon);
  const bool with_tc = state.range(0) != 0;
  for (auto _ : state) {
    for (const ProposalSet& set : proposals) {
      if (set.proposals.empty()) continue;
      if (with_tc) {
        benchmark::DoNotOptimize(LocalizeSteps(set, w));
      } else {
        benchmark::DoNotOptimize(LocalizeStepsUnrefined(set));
      }
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(proposals.size()));
}
BENCHMARK(BM_LocalizeSteps)->Arg(0)->Arg(1);

void BM_Evaluate(benchmark::State& state) {
  const SynthConfig config = NoisyConfig(static_cast<int>(state.range(0)));
  const SyntheticCorpus corpus = GenerateCorpus(config);
  const auto proposals =
      GenerateProposals(corpus.videos, corpus.lexicon, config.noise, config.seed);
  DetectionsByVideo detections;
  for (const ProposalSet& set : proposals) {
    detections[set.video_id] =
        set.proposals.empty() ? DetectionList{} : LocalizeStepsUnrefined(set);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(Evaluate(detections, corpus.videos, corpus.lexicon));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate)->Arg(200)->Arg(1000);

void BM_GenerateCorpus(benchmark::State& state) {
  const SynthConfig config = NoisyConfig(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(GenerateCorpus(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateCorpus)->Arg(200);

}  // namespace
}  // namespace stepcoin

BENCHMARK_MAIN();
