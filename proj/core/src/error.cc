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

#include "stepcoin/error.h"

namespace stepcoin {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kValidationError:
      return "ValidationError";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kEmptyProposalSet:
      return "EmptyProposalSet";
    case ErrorCode::kUnknownTask:
      return "UnknownTask";
    case ErrorCode::kInvalidGamma:
      return "InvalidGamma";
    case ErrorCode::kNoGroundTruth:
      return "NoGroundTruth";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kInfeasibleConfig:
      return "InfeasibleConfig";
    case ErrorCode::kUnknownProject:
      return "UnknownProject";
    case ErrorCode::kUnknownVideo:
      return "UnknownVideo";
    case ErrorCode::kUnsupportedRate:
      return "UnsupportedRate";
    case ErrorCode::kWrongPass:
      return "WrongPass";
    case ErrorCode::kRevisionConflict:
      return "RevisionConflict";
    case ErrorCode::kIncompleteProject:
      return "IncompleteProject";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

void Throw(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace stepcoin
