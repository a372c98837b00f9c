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

#ifndef STEPCOIN_PARALLEL_H_
#define STEPCOIN_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace stepcoin {

// Resolves a worker count. requested <= 0 means "hardware concurrency".
// The STEPCOIN_THREADS environment variable, when set to a positive integer,
// caps the result. Always returns at least 1.
int ResolveThreadCount(int requested);

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; bodies must only write to state owned by their
// index. The first exception thrown by any body is rethrown after all
// workers have joined.
void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& body);

}  // namespace stepcoin

#endif  // STEPCOIN_PARALLEL_H_
