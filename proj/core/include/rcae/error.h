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

#ifndef RCAE_ERROR_H_
#define RCAE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rcae {

enum class ErrorCode {
  kDimMismatch,
  kTargetTooSmall,
  kKernelTooLarge,
  kDivisionByZero,
  kNonNegligibleImaginaryPart,
  kInvalidDims,
  kInvalidSigma,
  kModeMismatch,
  kEmptyStats,
  kEmptyBatch,
  kUnreadablePath,
  kDecodeFailure,
  kDimUnderflow,
  kEmptyDataset,
  kInvalidSpec,
  kInvalidConfig,
  kIoError,
  kFormatError,
  kStreamTooShort,
  kOverlappingSplits,
};

// Coarse grouping used by the CLI to pick an exit status.
enum class ErrorCategory { kConfig, kData, kSolve };

std::string_view ErrorCodeName(ErrorCode code);
ErrorCategory CategoryOf(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  // The message without the code name prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace rcae

#endif  // RCAE_ERROR_H_
