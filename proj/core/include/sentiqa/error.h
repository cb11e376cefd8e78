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

#ifndef SENTIQA_ERROR_H_
#define SENTIQA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sentiqa {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidRating,
  kParse,
  kDuplicateId,
  kEmptyInput,
  kIo,
  kResource,
  kIneligibleTarget,
  kNoCandidate,
  kUnattackable,
  kTemplate,
  kAmbiguousLabel,
  kNoLabel,
  kTransport,
  kConfig,
  kMismatch,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported as sentiqa::Error (or a subclass).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A malformed input line; line numbers are 1-based and include the header.
class LineError : public Error {
 public:
  LineError(ErrorCode code, std::string source, std::size_t line,
            const std::string& message);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Raised by the label parser; keeps the response that failed to parse.
class LabelParseError : public Error {
 public:
  LabelParseError(ErrorCode code, std::string raw_response,
                  const std::string& message);

  const std::string& raw_response() const noexcept { return raw_response_; }

 private:
  std::string raw_response_;
};

class TransportError : public Error {
 public:
  TransportError(const std::string& message, bool retryable);

  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

}  // namespace sentiqa

#endif  // SENTIQA_ERROR_H_
