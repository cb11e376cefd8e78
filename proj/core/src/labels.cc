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

#include "sentiqa/labels.h"

namespace sentiqa {

std::string_view label_name(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::kPositive: return "POSITIVE";
    case SentimentLabel::kNeutral: return "NEUTRAL";
    case SentimentLabel::kNegative: return "NEGATIVE";
  }
  return "?";
}

std::optional<SentimentLabel> label_from_name(std::string_view name) {
  for (SentimentLabel label : kAllLabels) {
    if (label_name(label) == name) return label;
  }
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) {
  if (v == Verdict::kInvalid) return "INVALID";
  return label_name(*verdict_label(v));
}

std::optional<Verdict> verdict_from_name(std::string_view name) {
  if (name == "INVALID") return Verdict::kInvalid;
  if (auto label = label_from_name(name)) return to_verdict(*label);
  return std::nullopt;
}

}  // namespace sentiqa
