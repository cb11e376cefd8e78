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

#ifndef SENTIQA_LABELS_H_
#define SENTIQA_LABELS_H_

#include <array>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <string_view>

namespace sentiqa {

// Three-class sentiment. The enumerator order is the confusion-matrix axis
// order and must not change.
enum class SentimentLabel : std::uint8_t { kPositive = 0, kNeutral = 1, kNegative = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<SentimentLabel, kNumLabels> kAllLabels = {
    SentimentLabel::kPositive, SentimentLabel::kNeutral, SentimentLabel::kNegative};

constexpr std::size_t index_of(SentimentLabel label) {
  return static_cast<std::size_t>(label);
}

// "POSITIVE", "NEUTRAL", "NEGATIVE".
std::string_view label_name(SentimentLabel label);
// Exact upper-case name; nullopt otherwise.
std::optional<SentimentLabel> label_from_name(std::string_view name);

// A classifier's answer for one sample: a label, or INVALID when the backend
// failed or its response could not be parsed.
enum class Verdict : std::uint8_t { kPositive = 0, kNeutral = 1, kNegative = 2, kInvalid = 3 };

constexpr Verdict to_verdict(SentimentLabel label) {
  return static_cast<Verdict>(static_cast<std::uint8_t>(label));
}
constexpr std::optional<SentimentLabel> verdict_label(Verdict v) {
  if (v == Verdict::kInvalid) return std::nullopt;
  return static_cast<SentimentLabel>(static_cast<std::uint8_t>(v));
}
constexpr bool is_correct(Verdict v, SentimentLabel gold) {
  return v == to_verdict(gold);
}

std::string_view verdict_name(Verdict v);
std::optional<Verdict> verdict_from_name(std::string_view name);

}  // namespace sentiqa

#endif  // SENTIQA_LABELS_H_
