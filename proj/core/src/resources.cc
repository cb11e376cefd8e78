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

#include "sentiqa/resources.h"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "sentiqa/error.h"
#include "sentiqa/text.h"

namespace sentiqa {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw LineError(ErrorCode::kResource, source, line_no, "expected key<TAB>values");
    }
    fn(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1), line_no);
  }
}

char32_t parse_codepoint(std::string_view s) {
  s = trim(s);
  if (s.size() < 3 || (s[0] != 'U' && s[0] != 'u') || s[1] != '+') {
    throw Error(ErrorCode::kResource, "bad code point '" + std::string(s) + "'");
  }
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data() + 2, s.data() + s.size(), value, 16);
  if (ec != std::errc() || ptr != s.data() + s.size() || value > 0x10FFFF) {
    throw Error(ErrorCode::kResource, "bad code point '" + std::string(s) + "'");
  }
  return static_cast<char32_t>(value);
}

bool exists_all(const std::filesystem::path& dir) {
  std::error_code ec;
  for (std::string_view f : {kLexiconFile, kHomoglyphFile, kSynonymFile, kHomophoneFile}) {
    if (!std::filesystem::is_regular_file(dir / f, ec)) return false;
  }
  return true;
}

}  // namespace

HomoglyphTable::HomoglyphTable(std::array<std::vector<char32_t>, 26> lookalikes)
    : lookalikes_(std::move(lookalikes)) {
  for (std::size_t i = 0; i < lookalikes_.size(); ++i) {
    const char letter = static_cast<char>('a' + i);
    if (lookalikes_[i].empty()) {
      throw Error(ErrorCode::kResource,
                  std::string("homoglyph table has no entry for '") + letter + "'");
    }
    for (char32_t cp : lookalikes_[i]) {
      if (cp < 0x80 || !text::is_letter(cp)) {
        throw Error(ErrorCode::kResource,
                    std::string("homoglyph for '") + letter +
                        "' must be a non-ASCII alphabetic code point");
      }
    }
  }
}

HomoglyphTable HomoglyphTable::parse(std::istream& in, const std::string& source_name) {
  std::array<std::vector<char32_t>, 26> table;
  for_each_record(in, source_name, [&](std::string_view key, std::string_view values,
                                       std::size_t line_no) {
    if (key.size() != 1 || key[0] < 'a' || key[0] > 'z') {
      throw LineError(ErrorCode::kResource, source_name, line_no,
                      "key must be a lowercase ASCII letter");
    }
    auto& list = table[static_cast<std::size_t>(key[0] - 'a')];
    try {
      for (std::string_view v : split(values, ',')) list.push_back(parse_codepoint(v));
    } catch (const Error& e) {
      throw LineError(ErrorCode::kResource, source_name, line_no, e.what());
    }
  });
  return HomoglyphTable(std::move(table));
}

HomoglyphTable HomoglyphTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kResource, "cannot open homoglyph table " + path.string());
  return parse(in, path.string());
}

const std::vector<char32_t>& HomoglyphTable::lookalikes(char32_t letter) const {
  const char32_t lower = text::is_ascii_letter(letter) ? (letter | 0x20) : letter;
  if (lower < U'a' || lower > U'z') {
    throw Error(ErrorCode::kResource, "homoglyph table covers ASCII letters only");
  }
  return lookalikes_[lower - U'a'];
}

SubstitutionDictionary::SubstitutionDictionary(
    std::map<std::string, std::vector<std::string>> entries) {
  for (auto& [word, alternatives] : entries) {
    std::string key = text::to_lower(word);
    if (alternatives.empty()) {
      throw Error(ErrorCode::kResource, "no candidates for '" + key + "'");
    }
    for (const std::string& alt : alternatives) {
      if (text::to_lower(alt) == key) {
        throw Error(ErrorCode::kResource, "candidate equals its key '" + key + "'");
      }
    }
    entries_[std::move(key)] = std::move(alternatives);
  }
}

SubstitutionDictionary SubstitutionDictionary::parse(std::istream& in,
                                                     const std::string& source_name) {
  std::map<std::string, std::vector<std::string>> entries;
  for_each_record(in, source_name, [&](std::string_view key, std::string_view values,
                                       std::size_t line_no) {
    std::vector<std::string>& list = entries[text::to_lower(trim(key))];
    for (std::string_view v : split(values, ',')) {
      v = trim(v);
      if (v.empty()) {
        throw LineError(ErrorCode::kResource, source_name, line_no, "empty candidate");
      }
      if (text::to_lower(v) == text::to_lower(trim(key))) {
        throw LineError(ErrorCode::kResource, source_name, line_no,
                        "candidate equals its key");
      }
      list.emplace_back(v);
    }
  });
  return SubstitutionDictionary(std::move(entries));
}

SubstitutionDictionary SubstitutionDictionary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kResource, "cannot open dictionary " + path.string());
  return parse(in, path.string());
}

const std::vector<std::string>* SubstitutionDictionary::candidates(std::string_view word) const {
  const auto it = entries_.find(text::to_lower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

AttackResources AttackResources::load(const std::filesystem::path& dir) {
  return AttackResources{HomoglyphTable::load(dir / kHomoglyphFile),
                         SubstitutionDictionary::load(dir / kSynonymFile),
                         SubstitutionDictionary::load(dir / kHomophoneFile), 0};
}

std::filesystem::path bundled_resource_dir() {
  if (const char* env = std::getenv("SENTIQA_RESOURCE_DIR"); env != nullptr && *env != '\0') {
    if (exists_all(env)) return env;
    throw Error(ErrorCode::kConfig,
                std::string("SENTIQA_RESOURCE_DIR=") + env + " lacks the resource files");
  }
  for (const char* dir : {SENTIQA_SOURCE_RESOURCE_DIR, SENTIQA_INSTALLED_RESOURCE_DIR}) {
    if (exists_all(dir)) return dir;
  }
  throw Error(ErrorCode::kConfig, "bundled resource directory not found");
}

}  // namespace sentiqa
