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

#ifndef STEPCOIN_INTERVAL_H_
#define STEPCOIN_INTERVAL_H_

namespace stepcoin {

// Half-open time span [start, end) in seconds.
struct Interval {
  double start = 0.0;
  double end = 0.0;

  double Length() const { return end - start; }
  bool IsValid() const { return start >= 0.0 && start < end; }
  bool Contains(double t) const { return start <= t && t < end; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

double IntersectionLength(const Interval& a, const Interval& b);

// |a ∩ b| / |a ∪ b|. Touching intervals have IoU 0.
double TemporalIou(const Interval& a, const Interval& b);

}  // namespace stepcoin

#endif  // STEPCOIN_INTERVAL_H_
