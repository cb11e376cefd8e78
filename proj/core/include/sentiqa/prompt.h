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

#ifndef SENTIQA_PROMPT_H_
#define SENTIQA_PROMPT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sentiqa/labels.h"

namespace sentiqa {

inline constexpr std::string_view kReviewPlaceholder = "{ReviewText}";

inline constexpr std::string_view kDefaultSystemPrompt =
    "You are an AI language model trained to analyze and detect the sentiment of "
    "product reviews";
inline constexpr std::string_view kDefaultInstruction =
    "Analyze the following product review and determine if the sentiment is "
    "POSITIVE, NEGATIVE or NEUTRAL: {ReviewText}";
inline constexpr std::string_view kDefaultOutputControl =
    "Return only a single word, such as POSITIVE, NEGATIVE or NEUTRAL.";

// A worked example shown before the instruction.
struct Shot {
  std::string example_text;
  SentimentLabel example_label = SentimentLabel::kNeutral;

  bool operator==(const Shot&) const = default;
};

struct PromptTemplate {
  std::string name;
  std::string system_text;
  // Must contain kReviewPlaceholder exactly once.
  std::string instruction_text;
  // Empty: zero-shot; one: one-shot; more: few-shot.
  std::vector<Shot> shots;
  std::string output_control;

  // Throws Error(kTemplate) when an invariant is violated.
  void validate() const;

  bool operator==(const PromptTemplate&) const = default;
};

struct RenderedPrompt {
  std::string system;
  std::string user;

  bool operator==(const RenderedPrompt&) const = default;
};

// User message layout (blocks separated by a blank line):
//
//   Review: <shot text>
//   Sentiment: <LABEL>          (once per shot)
//
//   <instruction with the placeholder replaced by review_text>
//   <output control>
//
// The review text is inserted verbatim and never re-scanned, so code points
// and literal braces in it pass through unchanged.
RenderedPrompt render(const PromptTemplate& prompt, std::string_view review_text);

// zero_shot, one_shot_positive, one_shot_neutral, one_shot_negative, few_shot.
std::vector<PromptTemplate> builtin_templates();
// Throws Error(kTemplate) for unknown names.
PromptTemplate builtin_template(std::string_view name);

// JSON documents with the field names of PromptTemplate; shots are objects
// {"example_text", "example_label"}.
PromptTemplate load_template(const std::filesystem::path& path);
void save_template(const std::filesystem::path& path, const PromptTemplate& prompt);
std::string template_to_json(const PromptTemplate& prompt);
PromptTemplate template_from_json(std::string_view json);

}  // namespace sentiqa

#endif  // SENTIQA_PROMPT_H_
