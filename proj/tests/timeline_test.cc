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

#include "stepcoin/timeline.h"

#include <regex>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support/test_util.h"

namespace stepcoin {
namespace {

int Count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

// The geometry of every block in lane `lane`, as "x,width" strings.
std::vector<std::string> LaneBlocks(const std::string& svg, int lane) {
  size_t pos = 0;
  for (int i = 0; i <= lane; ++i) {
    pos = svg.find("<g class=\"lane\"", pos + (i > 0 ? 1 : 0));
  }
  const size_t end = svg.find("</g>", pos);
  const std::string body = svg.substr(pos, end - pos);
  std::vector<std::string> out;
  const std::regex block("class=\"block\" data-step=\"(\\d+)\" x=\"([0-9.]+)\" "
                         "y=\"[0-9.]+\" width=\"([0-9.]+)\"");
  for (auto it = std::sregex_iterator(body.begin(), body.end(), block);
       it != std::sregex_iterator(); ++it) {
    out.push_back((*it)[1].str() + "@" + (*it)[2].str() + "+" + (*it)[3].str());
  }
  return out;
}

const VideoAnnotation kVideo{"v", 0, 60.0,
                             {{{2, 10}, 0}, {{15, 30}, 1}, {{40, 55}, 2}}};

TEST(TimelineTest, GroundTruthOnly) {
  const Lexicon lex = test::MakeLexicon({3});
  const std::string svg =
      RenderTimelineSvg(60.0, {LaneFromAnnotation("GT", kVideo)}, &lex);
  EXPECT_EQ(Count(svg, "<g class=\"lane\""), 1);
  EXPECT_EQ(Count(svg, "class=\"block\""), 3);
  EXPECT_EQ(Count(svg, "class=\"legend-swatch\""), 3);
  EXPECT_NE(svg.find("step 1"), std::string::npos);
}

TEST(TimelineTest, IdenticalLanesRenderIdentically) {
  DetectionList dets;
  for (const Segment& s : kVideo.segments) dets.push_back({s.interval, s.step_id, 0.5});
  const std::string svg = RenderTimelineSvg(
      60.0, {LaneFromAnnotation("GT", kVideo), LaneFromDetections("det", dets)},
      nullptr);
  const auto gt = LaneBlocks(svg, 0);
  const auto det = LaneBlocks(svg, 1);
  ASSERT_EQ(gt.size(), 3u);
  EXPECT_EQ(gt, det);
}

TEST(TimelineTest, TwoLanesEightBlocks) {
  // Three ground-truth steps against five detections.
  const DetectionList dets = {{{1, 9}, 0, 0.9},  {{12, 20}, 1, 0.8},
                              {{21, 29}, 1, 0.4}, {{41, 50}, 2, 0.7},
                              {{50, 58}, 0, 0.2}};
  const std::string svg = RenderTimelineSvg(
      60.0, {LaneFromAnnotation("GT", kVideo), LaneFromDetections("SSN+TC", dets)},
      nullptr);
  EXPECT_EQ(Count(svg, "<g class=\"lane\""), 2);
  EXPECT_EQ(Count(svg, "class=\"block\""), 8);
  const std::string ascii = RenderTimelineAscii(
      60.0, {LaneFromAnnotation("GT", kVideo), LaneFromDetections("SSN+TC", dets)},
      nullptr, 60);
  EXPECT_NE(ascii.find("GT     |..AAAAAAAA.....BBBBBBBBBBBBBBB..........CCCCCCCCCCCCCCC.....|"),
            std::string::npos)
      << ascii;
}

TEST(TimelineTest, EscapesMarkup) {
  const Lexicon lex = Lexicon::Create("v", {{0, "d"}}, {{0, 0, "t"}},
                                      {{0, 0, "cut <A> & \"B\""}});
  const std::string svg = RenderTimelineSvg(
      10.0, {LaneFromAnnotation("GT", {"v", 0, 10, {{{0, 5}, 0}}})}, &lex);
  EXPECT_NE(svg.find("cut &lt;A&gt; &amp; &quot;B&quot;"), std::string::npos);
  EXPECT_EQ(svg.find("<A>"), std::string::npos);
}

TEST(TimelineTest, Deterministic) {
  const auto lanes = std::vector<TimelineLane>{LaneFromAnnotation("GT", kVideo)};
  EXPECT_EQ(RenderTimelineSvg(60.0, lanes, nullptr), RenderTimelineSvg(60.0, lanes, nullptr));
}

}  // namespace
}  // namespace stepcoin
