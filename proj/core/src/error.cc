// Copyright 2026 The sentiqa Authors
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

#include "sentiqa/error.h"

#include <utility>

namespace sentiqa {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidRating: return "invalid-rating";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kResource: return "resource";
    case ErrorCode::kIneligibleTarget: return "ineligible-target";
    case ErrorCode::kNoCandidate: return "no-candidate";
    case ErrorCode::kUnattackable: return "unattackable";
    case ErrorCode::kTemplate: return "template";
    case ErrorCode::kAmbiguousLabel: return "ambiguous-label";
    case ErrorCode::kNoLabel: return "no-label";
    case ErrorCode::kTransport: return "transport";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kMismatch: return "mismatch";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

LineError::LineError(ErrorCode code, std::string source, std::size_t line,
                     const std::string& message)
    : Error(code, source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

LabelParseError::LabelParseError(ErrorCode code, std::string raw_response,
                                 const std::string& message)
    : Error(code, message), raw_response_(std::move(raw_response)) {}

TransportError::TransportError(const std::string& message, bool retryable)
    : Error(ErrorCode::kTransport, message), retryable_(retryable) {}

}  // namespace sentiqa
