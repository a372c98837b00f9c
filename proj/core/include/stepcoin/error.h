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

#ifndef STEPCOIN_ERROR_H_
#define STEPCOIN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace stepcoin {

enum class ErrorCode {
  kParseError,
  kValidationError,
  kDimensionMismatch,
  kInvalidArgument,
  kEmptyProposalSet,
  kUnknownTask,
  kInvalidGamma,
  kNoGroundTruth,
  kLengthMismatch,
  kInfeasibleConfig,
  kUnknownProject,
  kUnknownVideo,
  kUnsupportedRate,
  kWrongPass,
  kRevisionConflict,
  kIncompleteProject,
  kIoError,
};

// Stable identifier used in JSON error bodies and CLI diagnostics,
// e.g. "ValidationError".
std::string_view ErrorCodeName(ErrorCode code);

// The single exception type thrown by the library. Callers dispatch on
// code(); what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Throw(ErrorCode code, const std::string& message);

}  // namespace stepcoin

#endif  // STEPCOIN_ERROR_H_
