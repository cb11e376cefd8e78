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

#ifndef SENTIQA_LEXICON_H_
#define SENTIQA_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sentiqa {

enum class TokenKind { kWord, kPunct, kSpace };

// A slice of the input. [begin, end) are byte offsets; concatenating the
// text of all tokens in order reproduces the input exactly.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
  TokenKind kind = TokenKind::kPunct;

  bool operator==(const Token&) const = default;
};

// WORD tokens are maximal runs of alphabetic code points (plus trailing
// combining marks), where an apostrophe between two letters stays inside the
// word. Whitespace runs form one SPACE token; every other code point, and
// every invalid UTF-8 byte, is its own PUNCT token.
std::vector<Token> tokenize(std::string_view text);

// Number of WORD tokens.
std::size_t count_words(std::string_view text);

// Number of whitespace-delimited chunks; this is the review length measure.
std::size_t count_whitespace_tokens(std::string_view text);

// Word → valence map. Lookups are case-insensitive; unknown words score 0.
class ValenceLexicon {
 public:
  // Throws Error(kEmptyInput) if entries is empty. Keys are lower-cased.
  explicit ValenceLexicon(std::unordered_map<std::string, double> entries);

  // Reads `word<TAB>valence[<TAB>...]` lines; `#` lines and blank lines are
  // skipped. Extra columns (as in the raw VADER distribution) are ignored.
  static ValenceLexicon parse(std::istream& in, const std::string& source_name);
  static ValenceLexicon load(const std::filesystem::path& path);

  double valence(std::string_view word) const;
  bool contains(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, double> entries_;
};

struct WordImportance {
  // Position among the WORD tokens of the text (0-based).
  std::size_t token_index = 0;
  std::string word;
  double importance = 0.0;
};

// Importance score for a single word; must be nonnegative.
using WordScorer = std::function<double(std::string_view word)>;

// |valence| of the word.
WordScorer valence_importance(const ValenceLexicon& lexicon);

// WORD tokens by importance, descending; ties keep text order. Words with
// zero importance are kept at the tail.
std::vector<WordImportance> rank_words(std::string_view text, const WordScorer& scorer);
std::vector<WordImportance> rank_words(std::string_view text, const ValenceLexicon& lexicon);

// Negation cues for valence_sum: not, no, never, and any word ending in n't.
bool is_negator(std::string_view word);

// Sum of word valences. A word whose preceding three WORD tokens include a
// negator contributes its valence with the sign flipped (once, however many
// negators are in the window).
double valence_sum(std::string_view text, const ValenceLexicon& lexicon);

}  // namespace sentiqa

#endif  // SENTIQA_LEXICON_H_
