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

#ifndef SENTIQA_RESOURCES_H_
#define SENTIQA_RESOURCES_H_

#include <array>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sentiqa {

// Lowercase ASCII letter → visually confusable non-ASCII code points.
// Every lookalike is alphabetic, so a fully substituted word still tokenizes
// as a single word.
class HomoglyphTable {
 public:
  // Throws Error(kResource) unless all 26 letters have a nonempty, valid list.
  explicit HomoglyphTable(std::array<std::vector<char32_t>, 26> lookalikes);

  // Lines `letter<TAB>U+XXXX,U+YYYY`.
  static HomoglyphTable parse(std::istream& in, const std::string& source_name);
  static HomoglyphTable load(const std::filesystem::path& path);

  // letter is folded to lowercase; throws Error(kResource) for non-ASCII letters.
  const std::vector<char32_t>& lookalikes(char32_t letter) const;

 private:
  std::array<std::vector<char32_t>, 26> lookalikes_;
};

// Lowercase word → replacement candidates. Serves both the synonym thesaurus
// and the homophone list.
class SubstitutionDictionary {
 public:
  SubstitutionDictionary() = default;
  // Throws Error(kResource) if a list is empty or contains its own key.
  explicit SubstitutionDictionary(std::map<std::string, std::vector<std::string>> entries);

  // Lines `word<TAB>alt1,alt2,...`.
  static SubstitutionDictionary parse(std::istream& in, const std::string& source_name);
  static SubstitutionDictionary load(const std::filesystem::path& path);

  // Case-insensitive; nullptr when the word has no entry.
  const std::vector<std::string>* candidates(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

// Everything the perturbation generators read.
struct AttackResources {
  HomoglyphTable homoglyphs;
  SubstitutionDictionary synonyms;
  SubstitutionDictionary homophones;
  // Letters replaced per word by the homoglyph attack; 0 replaces every letter.
  std::size_t homoglyph_letters = 0;

  // Reads homoglyphs.tsv, synonyms.tsv and homophones.tsv from dir.
  static AttackResources load(const std::filesystem::path& dir);
};

// Directory holding the bundled resource files. Search order: the
// SENTIQA_RESOURCE_DIR environment variable, the source tree, the install
// prefix. Throws Error(kConfig) if none contains the files.
std::filesystem::path bundled_resource_dir();

inline constexpr std::string_view kLexiconFile = "valence_lexicon.tsv";
inline constexpr std::string_view kHomoglyphFile = "homoglyphs.tsv";
inline constexpr std::string_view kSynonymFile = "synonyms.tsv";
inline constexpr std::string_view kHomophoneFile = "homophones.tsv";

}  // namespace sentiqa

#endif  // SENTIQA_RESOURCES_H_
