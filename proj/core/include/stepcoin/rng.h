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

#ifndef STEPCOIN_RNG_H_
#define STEPCOIN_RNG_H_

#include <cstdint>
#include <string_view>

namespace stepcoin {

// xoshiro256** 1.0 seeded through SplitMix64. A (seed, stream) pair fully
// determines the sequence, and every sampler below is implemented here
// rather than through <random> distributions, whose output is
// implementation-defined. See docs/formats.md for the exact algorithm.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t Next();

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n);
  bool Bernoulli(double p) { return Uniform() < p; }
  // Standard normal via Box-Muller (one variate per call, no caching).
  double Normal();
  // Knuth's multiplication method; intended for small means.
  int Poisson(double mean);
  // Log-normal parameterised by its mean and the sigma of the underlying
  // normal.
  double LogNormalWithMean(double mean, double sigma);
  // Exponential with rate 1.
  double Exponential();

 private:
  std::uint64_t state_[4];
};

// SplitMix64 finaliser.
std::uint64_t Mix64(std::uint64_t x);

// FNV-1a, used to derive stream ids from video ids.
std::uint64_t HashString(std::string_view text);

}  // namespace stepcoin

#endif  // STEPCOIN_RNG_H_
