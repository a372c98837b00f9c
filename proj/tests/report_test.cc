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

#include "stepcoin/report.h"

#include <cmath>

#include <gtest/gtest.h>

#include "stepcoin/metrics.h"
#include "stepcoin/synthgen.h"
#include "support/test_util.h"

namespace stepcoin {
namespace {

using test::ThrowsError;

EvalReport NoisyReport(std::uint64_t seed) {
  SynthConfig config;
  config.seed = seed;
  config.num_videos = 60;
  config.noise = {1.0, 0.15, 0.3, 0.1};
  const SyntheticCorpus corpus = GenerateCorpus(config);
  const auto proposals =
      GenerateProposals(corpus.videos, corpus.lexicon, config.noise, seed);
  DetectionsByVideo dets;
  for (const ProposalSet& set : proposals) {
    dets[set.video_id] = LocalizeStepsUnrefined(set);
  }
  return Evaluate(dets, corpus.videos, corpus.lexicon);
}

TEST(ReportTest, JsonRoundTrip) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const EvalReport report = NoisyReport(seed);
    const std::string text = SerializeReport(report);
    EXPECT_EQ(ParseReport(text), report);
    EXPECT_EQ(SerializeReport(ParseReport(text)), text);
  }
}

TEST(ReportTest, JsonLayout) {
  EvalReport r;
  r.num_videos = 1;
  r.per_alpha.push_back({0.5, 50.0, 75.0, {{3, 2, 50.0, 75.0}}, {{1, 50.0}}, {{0, 50.0}}});
  const std::string text = SerializeReport(r);
  EXPECT_NE(text.find("\"format\": \"stepcoin-report-v1\""), std::string::npos);
  EXPECT_NE(text.find("\"mAP\": 50.0"), std::string::npos);
  EXPECT_NE(text.find("\"per_domain\""), std::string::npos);
}

TEST(ReportTest, TableLayout) {
  EvalReport r;
  r.per_alpha.push_back({0.1, 100.0, 100.0, {}, {}, {}});
  r.per_alpha.push_back({0.5, 9.054, 33.3333, {}, {}, {}});
  EXPECT_EQ(FormatReportTable(r),
            "alpha        0.10     0.50\n"
            "mAP@a      100.00     9.05\n"
            "mAR@a      100.00    33.33\n");
}

TEST(ReportTest, TableAgreesWithJsonToTwoDecimals) {
  const EvalReport report = NoisyReport(5);
  const auto rows = ParseReportTable(FormatReportTable(report));
  const EvalReport parsed = ParseReport(SerializeReport(report));
  ASSERT_EQ(rows.size(), parsed.per_alpha.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_LE(std::abs(rows[i].alpha - parsed.per_alpha[i].alpha), 0.005 + 1e-12);
    EXPECT_LE(std::abs(rows[i].map - parsed.per_alpha[i].map), 0.005 + 1e-12);
    EXPECT_LE(std::abs(rows[i].mar - parsed.per_alpha[i].mar), 0.005 + 1e-12);
  }
}

TEST(ReportTest, Malformed) {
  EXPECT_TRUE(ThrowsError([] { ParseReport("[]"); }, ErrorCode::kParseError));
  EXPECT_TRUE(ThrowsError([] { ParseReport(R"({"format": "stepcoin-ann-v1"})"); },
                          ErrorCode::kParseError));
  EXPECT_TRUE(ThrowsError([] { ParseReportTable("alpha 0.1 0.2\nmAP@a 3\nmAR@a 4 5\n"); },
                          ErrorCode::kParseError));
}

}  // namespace
}  // namespace stepcoin
