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

#include "stepcoin/interval.h"

#include <algorithm>

namespace stepcoin {

double IntersectionLength(const Interval& a, const Interval& b) {
  return std::max(0.0, std::min(a.end, b.end) - std::max(a.start, b.start));
}

double TemporalIou(const Interval& a, const Interval& b) {
  const double inter = IntersectionLength(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.Length() + b.Length() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

}  // namespace stepcoin
