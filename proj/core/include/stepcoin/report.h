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

#ifndef STEPCOIN_REPORT_H_
#define STEPCOIN_REPORT_H_

#include <string>
#include <string_view>
#include <vector>

#include "stepcoin/metrics.h"

namespace stepcoin {

inline constexpr std::string_view kReportFormat = "stepcoin-report-v1";

// Full-precision JSON form of an EvalReport.
std::string SerializeReport(const EvalReport& report);
EvalReport ParseReport(std::string_view json_text);

// Fixed-width table with one column per IoU threshold and an mAP row and an
// mAR row, values as percentages with two decimals:
//
//   alpha       0.10    0.20 ...
//   mAP@a      12.34   10.00 ...
//   mAR@a      40.00   38.12 ...
std::string FormatReportTable(const EvalReport& report);

struct TableRow {
  double alpha = 0.0;
  double map = 0.0;
  double mar = 0.0;
};

// Inverse of FormatReportTable (values carry two decimals).
std::vector<TableRow> ParseReportTable(std::string_view text);

}  // namespace stepcoin

#endif  // STEPCOIN_REPORT_H_
