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

#ifndef STEPCOIN_TESTS_SUPPORT_TEST_UTIL_H_
#define STEPCOIN_TESTS_SUPPORT_TEST_UTIL_H_

#include <cstdlib>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <gtest/gtest.h>

#include "stepcoin/error.h"
#include "stepcoin/lexicon.h"

namespace stepcoin::test {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "stepcoin-XXXXXX").string();
    path_ = ::mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

// One domain; task j gets steps_per_task[j] consecutive step ids.
inline Lexicon MakeLexicon(const std::vector<int>& steps_per_task) {
  std::vector<Task> tasks;
  std::vector<Step> steps;
  int next = 0;
  for (int j = 0; j < static_cast<int>(steps_per_task.size()); ++j) {
    tasks.push_back({j, 0, "task " + std::to_string(j)});
    for (int s = 0; s < steps_per_task[j]; ++s) {
      steps.push_back({next, j, "step " + std::to_string(next)});
      ++next;
    }
  }
  return Lexicon::Create("test", {{0, "domain"}}, std::move(tasks),
                         std::move(steps));
}

// Succeeds iff fn throws stepcoin::Error with `code` and a message
// containing `needle`.
template <typename Fn>
::testing::AssertionResult ThrowsError(Fn&& fn, ErrorCode code,
                                       std::string_view needle = {}) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() != code) {
      return ::testing::AssertionFailure()
             << "threw " << ErrorCodeName(e.code()) << " (" << e.what()
             << "), expected " << ErrorCodeName(code);
    }
    if (std::string_view(e.what()).find(needle) == std::string_view::npos) {
      return ::testing::AssertionFailure()
             << "message \"" << e.what() << "\" lacks \"" << needle << "\"";
    }
    return ::testing::AssertionSuccess();
  }
  return ::testing::AssertionFailure() << "no exception thrown";
}

}  // namespace stepcoin::test

#endif  // STEPCOIN_TESTS_SUPPORT_TEST_UTIL_H_
