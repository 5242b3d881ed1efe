// Copyright 2026 The RCAE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rcae/error.h"

namespace rcae {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kTargetTooSmall: return "TargetTooSmall";
    case ErrorCode::kKernelTooLarge: return "KernelTooLarge";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kNonNegligibleImaginaryPart: return "NonNegligibleImaginaryPart";
    case ErrorCode::kInvalidDims: return "InvalidDims";
    case ErrorCode::kInvalidSigma: return "InvalidSigma";
    case ErrorCode::kModeMismatch: return "ModeMismatch";
    case ErrorCode::kEmptyStats: return "EmptyStats";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kUnreadablePath: return "UnreadablePath";
    case ErrorCode::kDecodeFailure: return "DecodeFailure";
    case ErrorCode::kDimUnderflow: return "DimUnderflow";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIoError: return "IOError";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kStreamTooShort: return "StreamTooShort";
    case ErrorCode::kOverlappingSplits: return "OverlappingSplits";
  }
  return "Unknown";
}

ErrorCategory CategoryOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidSpec:
    case ErrorCode::kInvalidSigma:
    case ErrorCode::kInvalidDims:
    case ErrorCode::kOverlappingSplits:
      return ErrorCategory::kConfig;
    case ErrorCode::kDivisionByZero:
    case ErrorCode::kNonNegligibleImaginaryPart:
    case ErrorCode::kModeMismatch:
    case ErrorCode::kEmptyStats:
      return ErrorCategory::kSolve;
    default:
      return ErrorCategory::kData;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace rcae
