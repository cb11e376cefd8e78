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

#include "sentiqa/lexicon.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "sentiqa/error.h"
#include "sentiqa/text.h"

namespace sentiqa {
namespace {

constexpr std::size_t kNegationWindow = 3;

bool is_word_start(const text::CodePoint& cp) {
  return cp.valid && text::is_letter(cp.cp);
}

// End offset of the word starting at `begin`.
std::size_t scan_word(std::string_view s, std::size_t begin) {
  std::size_t i = begin + text::decode_at(s, begin).length;
  while (i < s.size()) {
    const text::CodePoint cp = text::decode_at(s, i);
    if (!cp.valid) break;
    if (text::is_letter(cp.cp) || text::is_combining_mark(cp.cp)) {
      i += cp.length;
      continue;
    }
    if (text::is_apostrophe(cp.cp) && i + cp.length < s.size() &&
        is_word_start(text::decode_at(s, i + cp.length))) {
      i += cp.length;
      continue;
    }
    break;
  }
  return i;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const text::CodePoint cp = text::decode_at(text, i);
    std::size_t end = i + cp.length;
    TokenKind kind = TokenKind::kPunct;
    if (is_word_start(cp)) {
      kind = TokenKind::kWord;
      end = scan_word(text, i);
    } else if (cp.valid && text::is_space(cp.cp)) {
      kind = TokenKind::kSpace;
      while (end < text.size()) {
        const text::CodePoint next = text::decode_at(text, end);
        if (!next.valid || !text::is_space(next.cp)) break;
        end += next.length;
      }
    }
    tokens.push_back(Token{std::string(text.substr(i, end - i)), i, end, kind});
    i = end;
  }
  return tokens;
}

std::size_t count_words(std::string_view text) {
  const auto tokens = tokenize(text);
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return t.kind == TokenKind::kWord; }));
}

std::size_t count_whitespace_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in_chunk = false;
  for (const Token& t : tokenize(text)) {
    if (t.kind == TokenKind::kSpace) {
      in_chunk = false;
    } else if (!in_chunk) {
      in_chunk = true;
      ++n;
    }
  }
  return n;
}

ValenceLexicon::ValenceLexicon(std::unordered_map<std::string, double> entries) {
  if (entries.empty()) throw Error(ErrorCode::kEmptyInput, "valence lexicon is empty");
  entries_.reserve(entries.size());
  for (auto& [word, valence] : entries) entries_[text::to_lower(word)] = valence;
}

ValenceLexicon ValenceLexicon::parse(std::istream& in, const std::string& source_name) {
  std::unordered_map<std::string, double> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw LineError(ErrorCode::kParse, source_name, line_no, "expected word<TAB>valence");
    }
    const std::string_view rest = std::string_view(line).substr(tab + 1);
    const std::string_view number = rest.substr(0, rest.find('\t'));
    double valence = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), valence);
    if (ec != std::errc() || ptr != number.data() + number.size() || !std::isfinite(valence)) {
      throw LineError(ErrorCode::kParse, source_name, line_no,
                      "bad valence '" + std::string(number) + "'");
    }
    entries[line.substr(0, tab)] = valence;
  }
  if (entries.empty()) {
    throw Error(ErrorCode::kEmptyInput, source_name + ": valence lexicon has no entries");
  }
  return ValenceLexicon(std::move(entries));
}

ValenceLexicon ValenceLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path.string());
  return parse(in, path.string());
}

double ValenceLexicon::valence(std::string_view word) const {
  const auto it = entries_.find(text::to_lower(word));
  return it == entries_.end() ? 0.0 : it->second;
}

bool ValenceLexicon::contains(std::string_view word) const {
  return entries_.count(text::to_lower(word)) > 0;
}

WordScorer valence_importance(const ValenceLexicon& lexicon) {
  return [&lexicon](std::string_view word) { return std::abs(lexicon.valence(word)); };
}

std::vector<WordImportance> rank_words(std::string_view text, const WordScorer& scorer) {
  std::vector<WordImportance> ranked;
  for (const Token& t : tokenize(text)) {
    if (t.kind != TokenKind::kWord) continue;
    ranked.push_back({ranked.size(), t.text, scorer(t.text)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const WordImportance& a, const WordImportance& b) {
                     return a.importance > b.importance;
                   });
  return ranked;
}

std::vector<WordImportance> rank_words(std::string_view text, const ValenceLexicon& lexicon) {
  return rank_words(text, valence_importance(lexicon));
}

bool is_negator(std::string_view word) {
  const std::string lower = text::to_lower(word);
  if (lower == "not" || lower == "no" || lower == "never") return true;
  const std::string_view v(lower);
  return v.ends_with("n't") || v.ends_with("n’t");
}

double valence_sum(std::string_view text, const ValenceLexicon& lexicon) {
  std::vector<bool> negator_flags;
  double sum = 0.0;
  for (const Token& t : tokenize(text)) {
    if (t.kind != TokenKind::kWord) continue;
    const std::size_t n = negator_flags.size();
    const std::size_t from = n > kNegationWindow ? n - kNegationWindow : 0;
    const bool negated = std::any_of(negator_flags.begin() + static_cast<std::ptrdiff_t>(from),
                                     negator_flags.end(), [](bool b) { return b; });
    const double v = lexicon.valence(t.text);
    sum += negated ? -v : v;
    negator_flags.push_back(is_negator(t.text));
  }
  return sum;
}

}  // namespace sentiqa
