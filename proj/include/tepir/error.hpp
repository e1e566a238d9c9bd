// Copyright 2026 The tepir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEPIR_ERROR_HPP_
#define TEPIR_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tepir {

enum class ErrorCode {
  kNonPrimeModulus,
  kDivisionByZero,
  kDuplicatePoint,
  kZeroPoint,
  kFieldTooSmall,
  kOutOfRange,
  kPreconditionViolation,
  kSingularMatrix,
  kDimensionMismatch,
  kInvalidParameters,
  kIndivisibleBlock,
  kDecodeFailure,
  kSystemPrivacyUnsatisfied,
  kUsage,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (tests, the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kDuplicatePoint: return "DuplicatePoint";
    case ErrorCode::kZeroPoint: return "ZeroPoint";
    case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kPreconditionViolation: return "PreconditionViolation";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidParameters: return "InvalidParameters";
    case ErrorCode::kIndivisibleBlock: return "IndivisibleBlock";
    case ErrorCode::kDecodeFailure: return "DecodeFailure";
    case ErrorCode::kSystemPrivacyUnsatisfied: return "SystemPrivacyUnsatisfied";
    case ErrorCode::kUsage: return "UsageError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace tepir

#endif  // TEPIR_ERROR_HPP_
