// Copyright 2026 The privmech Authors
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

#ifndef PRIVMECH_ERROR_HPP_
#define PRIVMECH_ERROR_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace privmech {

enum class ErrorCode {
  kEmptyVector,
  kNegativeEntry,
  kNonFiniteEntry,
  kSumOutOfTolerance,
  kEmptyMatrix,
  kRaggedRows,
  kRowSumOutOfTolerance,
  kDimensionMismatch,
  kInvalidTolerance,
  kInvalidArgument,
  kCustomFNotNormalized,
  kBudgetTooSmall,
  kInvalidK,
  kNegativeAlpha,
  kAlphaOutOfRange,
  kInvalidSize,
  kInvalidConcentration,
  kTooFewValues,
  kNegativeValue,
  kSymbolOutOfRange,
  kBadDirectionVector,
  kPreconditionNotMet,
  kParseError,
};

std::string_view ToString(ErrorCode code) noexcept;

// Structured payload; which fields are set depends on the code.
struct ErrorDetail {
  std::optional<std::int64_t> index;
  std::optional<std::int64_t> row;
  std::optional<std::int64_t> col;
  std::optional<double> value;
  std::optional<std::int64_t> minimal_n;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, ErrorDetail detail = {})
      : std::runtime_error(std::string(ToString(code)) + ": " + message),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const ErrorDetail& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  ErrorDetail detail_;
};

inline std::string_view ToString(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kEmptyVector: return "EmptyVector";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kSumOutOfTolerance: return "SumOutOfTolerance";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kRowSumOutOfTolerance: return "RowSumOutOfTolerance";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidTolerance: return "InvalidTolerance";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kCustomFNotNormalized: return "CustomFNotNormalized";
    case ErrorCode::kBudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kNegativeAlpha: return "NegativeAlpha";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kInvalidSize: return "InvalidSize";
    case ErrorCode::kInvalidConcentration: return "InvalidConcentration";
    case ErrorCode::kTooFewValues: return "TooFewValues";
    case ErrorCode::kNegativeValue: return "NegativeValue";
    case ErrorCode::kSymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::kBadDirectionVector: return "BadDirectionVector";
    case ErrorCode::kPreconditionNotMet: return "PreconditionNotMet";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace privmech

#endif  // PRIVMECH_ERROR_HPP_
