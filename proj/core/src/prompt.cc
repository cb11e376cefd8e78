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

#include "sentiqa/prompt.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sentiqa/error.h"

namespace sentiqa {
namespace {

using nlohmann::json;

const Shot kPositiveShot{
    "This blender is powerful, quiet and easy to clean. I use it every morning.",
    SentimentLabel::kPositive};
const Shot kNeutralShot{
    "The charger arrived on Tuesday. It is the same model as the one that came with my phone.",
    SentimentLabel::kNeutral};
const Shot kNegativeShot{
    "The zipper broke after two days and the seller never answered my emails.",
    SentimentLabel::kNegative};

PromptTemplate make_builtin(std::string name, std::vector<Shot> shots) {
  return PromptTemplate{std::move(name), std::string(kDefaultSystemPrompt),
                        std::string(kDefaultInstruction), std::move(shots),
                        std::string(kDefaultOutputControl)};
}

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

void PromptTemplate::validate() const {
  const std::size_t n = count_occurrences(instruction_text, kReviewPlaceholder);
  if (n != 1) {
    throw Error(ErrorCode::kTemplate, "template '" + name + "': instruction must contain " +
                                          std::string(kReviewPlaceholder) + " exactly once (found " +
                                          std::to_string(n) + ")");
  }
  for (const Shot& shot : shots) {
    if (shot.example_text.empty()) {
      throw Error(ErrorCode::kTemplate, "template '" + name + "': empty shot text");
    }
  }
}

RenderedPrompt render(const PromptTemplate& prompt, std::string_view review_text) {
  prompt.validate();
  std::string user;
  for (const Shot& shot : prompt.shots) {
    user += "Review: ";
    user += shot.example_text;
    user += "\nSentiment: ";
    user += label_name(shot.example_label);
    user += "\n\n";
  }
  const std::string_view instruction = prompt.instruction_text;
  const auto pos = instruction.find(kReviewPlaceholder);
  user += instruction.substr(0, pos);
  user += review_text;
  user += instruction.substr(pos + kReviewPlaceholder.size());
  if (!prompt.output_control.empty()) {
    user += '\n';
    user += prompt.output_control;
  }
  return RenderedPrompt{prompt.system_text, std::move(user)};
}

std::vector<PromptTemplate> builtin_templates() {
  return {
      make_builtin("zero_shot", {}),
      make_builtin("one_shot_positive", {kPositiveShot}),
      make_builtin("one_shot_neutral", {kNeutralShot}),
      make_builtin("one_shot_negative", {kNegativeShot}),
      make_builtin("few_shot", {kPositiveShot, kNeutralShot, kNegativeShot}),
  };
}

PromptTemplate builtin_template(std::string_view name) {
  for (PromptTemplate& t : builtin_templates()) {
    if (t.name == name) return std::move(t);
  }
  throw Error(ErrorCode::kTemplate, "unknown builtin template '" + std::string(name) + "'");
}

std::string template_to_json(const PromptTemplate& prompt) {
  json shots = json::array();
  for (const Shot& shot : prompt.shots) {
    shots.push_back({{"example_text", shot.example_text},
                     {"example_label", std::string(label_name(shot.example_label))}});
  }
  const json doc = {{"name", prompt.name},
                    {"system_text", prompt.system_text},
                    {"instruction_text", prompt.instruction_text},
                    {"shots", shots},
                    {"output_control", prompt.output_control}};
  return doc.dump(2) + "\n";
}

PromptTemplate template_from_json(std::string_view text) {
  PromptTemplate prompt;
  try {
    const json doc = json::parse(text);
    prompt.name = doc.at("name").get<std::string>();
    prompt.system_text = doc.value("system_text", std::string());
    prompt.instruction_text = doc.at("instruction_text").get<std::string>();
    prompt.output_control = doc.value("output_control", std::string());
    for (const json& shot : doc.value("shots", json::array())) {
      const std::string label_text = shot.at("example_label").get<std::string>();
      const auto label = label_from_name(label_text);
      if (!label) throw Error(ErrorCode::kTemplate, "unknown shot label '" + label_text + "'");
      prompt.shots.push_back({shot.at("example_text").get<std::string>(), *label});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kTemplate, std::string("malformed template: ") + e.what());
  }
  prompt.validate();
  return prompt;
}

PromptTemplate load_template(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open template " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return template_from_json(buf.str());
}

void save_template(const std::filesystem::path& path, const PromptTemplate& prompt) {
  prompt.validate();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write template " + path.string());
  out << template_to_json(prompt);
}

}  // namespace sentiqa
