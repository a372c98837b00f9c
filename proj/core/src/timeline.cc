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

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include <fmt/format.h>

namespace stepcoin {

namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
    "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7",
    "#dbdb8d", "#9edae5"};
constexpr int kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

constexpr double kLabelWidth = 140.0;
constexpr double kPlotWidth = 800.0;
constexpr double kLaneHeight = 28.0;
constexpr double kLaneGap = 8.0;
constexpr double kTop = 24.0;
constexpr double kLegendRow = 18.0;

// Step id -> legend slot, by first appearance.
std::map<int, int> LegendSlots(const std::vector<TimelineLane>& lanes,
                               std::vector<int>& order) {
  std::map<int, int> slots;
  for (const TimelineLane& lane : lanes) {
    for (const Segment& s : lane.blocks) {
      if (slots.emplace(s.step_id, static_cast<int>(order.size())).second) {
        order.push_back(s.step_id);
      }
    }
  }
  return slots;
}

std::string Phrase(int step_id, const Lexicon* lexicon) {
  if (lexicon != nullptr && lexicon->HasStep(step_id)) {
    return lexicon->step(step_id).phrase;
  }
  return fmt::format("step {}", step_id);
}

std::string EscapeXml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

char SlotLetter(int slot) {
  if (slot < 26) return static_cast<char>('A' + slot);
  if (slot < 52) return static_cast<char>('a' + slot - 26);
  return '#';
}

}  // namespace

TimelineLane LaneFromDetections(std::string label,
                                const DetectionList& detections) {
  TimelineLane lane{std::move(label), {}};
  DetectionList ranked = detections;
  SortByRank(ranked);
  for (const Detection& d : ranked) lane.blocks.push_back({d.interval, d.step_id});
  return lane;
}

TimelineLane LaneFromAnnotation(std::string label,
                                const VideoAnnotation& annotation) {
  return {std::move(label), annotation.segments};
}

std::string RenderTimelineSvg(double duration,
                              const std::vector<TimelineLane>& lanes,
                              const Lexicon* lexicon) {
  std::vector<int> order;
  const auto slots = LegendSlots(lanes, order);
  const double scale = duration > 0.0 ? kPlotWidth / duration : 0.0;
  const double lanes_bottom =
      kTop + static_cast<double>(lanes.size()) * (kLaneHeight + kLaneGap);
  const double height =
      lanes_bottom + 16.0 + static_cast<double>(order.size()) * kLegendRow + 8.0;
  const double width = kLabelWidth + kPlotWidth + 20.0;

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height, width, height);
  svg += fmt::format(
      "<text x=\"{:.1f}\" y=\"16\">0 s</text>"
      "<text x=\"{:.1f}\" y=\"16\" text-anchor=\"end\">{:.1f} s</text>\n",
      kLabelWidth, kLabelWidth + kPlotWidth, duration);

  for (size_t l = 0; l < lanes.size(); ++l) {
    const double y = kTop + static_cast<double>(l) * (kLaneHeight + kLaneGap);
    svg += fmt::format("<g class=\"lane\" data-label=\"{}\">\n",
                       EscapeXml(lanes[l].label));
    svg += fmt::format(
        "<text x=\"4\" y=\"{:.1f}\">{}</text>\n", y + kLaneHeight * 0.65,
        EscapeXml(lanes[l].label));
    svg += fmt::format(
        "<rect class=\"track\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" "
        "height=\"{:.1f}\" fill=\"#f2f2f2\"/>\n",
        kLabelWidth, y, kPlotWidth, kLaneHeight);
    // Reverse so earlier blocks end up on top.
    for (auto it = lanes[l].blocks.rbegin(); it != lanes[l].blocks.rend();
         ++it) {
      const int slot = slots.at(it->step_id);
      svg += fmt::format(
          "<rect class=\"block\" data-step=\"{}\" x=\"{:.3f}\" y=\"{:.1f}\" "
          "width=\"{:.3f}\" height=\"{:.1f}\" fill=\"{}\">"
          "<title>{} [{:.2f}, {:.2f})</title></rect>\n",
          it->step_id, kLabelWidth + it->interval.start * scale, y,
          it->interval.Length() * scale, kLaneHeight,
          kPalette[slot % kPaletteSize],
          EscapeXml(Phrase(it->step_id, lexicon)), it->interval.start,
          it->interval.end);
    }
    svg += "</g>\n";
  }

  for (size_t i = 0; i < order.size(); ++i) {
    const double y = lanes_bottom + 8.0 + static_cast<double>(i) * kLegendRow;
    svg += fmt::format(
        "<rect class=\"legend-swatch\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" "
        "height=\"12\" fill=\"{}\"/><text x=\"{:.1f}\" y=\"{:.1f}\">{}: {}"
        "</text>\n",
        kLabelWidth, y, kPalette[static_cast<int>(i) % kPaletteSize],
        kLabelWidth + 18.0, y + 10.0, order[i],
        EscapeXml(Phrase(order[i], lexicon)));
  }
  svg += "</svg>\n";
  return svg;
}

std::string RenderTimelineAscii(double duration,
                                const std::vector<TimelineLane>& lanes,
                                const Lexicon* lexicon, int width) {
  std::vector<int> order;
  const auto slots = LegendSlots(lanes, order);
  size_t label_width = 4;
  for (const TimelineLane& lane : lanes) {
    label_width = std::max(label_width, lane.label.size());
  }

  std::string out = fmt::format("{:<{}} |0{:>{}}|\n", "", label_width,
                                fmt::format("{:.1f}s", duration), width - 1);
  for (const TimelineLane& lane : lanes) {
    std::string row(width, '.');
    for (auto it = lane.blocks.rbegin(); it != lane.blocks.rend(); ++it) {
      const char mark = SlotLetter(slots.at(it->step_id));
      for (int c = 0; c < width; ++c) {
        const double mid = (c + 0.5) * duration / width;
        if (it->interval.Contains(mid)) row[c] = mark;
      }
    }
    out += fmt::format("{:<{}} |{}|\n", lane.label, label_width, row);
  }
  for (size_t i = 0; i < order.size(); ++i) {
    out += fmt::format("  {} = {} ({})\n", SlotLetter(static_cast<int>(i)),
                       Phrase(order[i], lexicon), order[i]);
  }
  return out;
}

}  // namespace stepcoin
