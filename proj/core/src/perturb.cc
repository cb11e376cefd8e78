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

#include "sentiqa/perturb.h"

#include <algorithm>
#include <numeric>
#include <optional>

#include "sentiqa/error.h"
#include "sentiqa/rng.h"
#include "sentiqa/text.h"

namespace sentiqa {
namespace {

constexpr std::string_view kLowercaseAlphabet = "abcdefghijklmnopqrstuvwxyz";

// The target WORD token of a text.
struct Target {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string word;
};

Target locate(std::string_view text, std::size_t target_token_index) {
  std::size_t seen = 0;
  for (const Token& t : tokenize(text)) {
    if (t.kind != TokenKind::kWord) continue;
    if (seen++ == target_token_index) return {t.begin, t.end, t.text};
  }
  throw Error(ErrorCode::kInvalidArgument,
              "text has no WORD token at index " + std::to_string(target_token_index));
}

// True when `s` tokenizes to exactly one WORD token.
bool is_single_word(std::string_view s) {
  const auto tokens = tokenize(s);
  return tokens.size() == 1 && tokens.front().kind == TokenKind::kWord;
}

AdversarialExample make_example(std::string_view text, const Target& target,
                                std::size_t target_token_index, PerturbationKind kind,
                                std::string replacement, std::uint64_t seed) {
  AdversarialExample ex;
  ex.perturbed_text.reserve(text.size() + replacement.size());
  ex.perturbed_text.append(text.substr(0, target.begin));
  ex.perturbed_text.append(replacement);
  ex.perturbed_text.append(text.substr(target.end));
  ex.kind = kind;
  ex.target_token_index = target_token_index;
  ex.original_word = target.word;
  ex.perturbed_word = std::move(replacement);
  ex.seed = seed;
  return ex;
}

[[noreturn]] void ineligible(const Target& target, std::string_view why) {
  throw Error(ErrorCode::kIneligibleTarget,
              "word '" + target.word + "' is ineligible: " + std::string(why));
}

std::vector<std::size_t> letter_positions(const std::u32string& w) {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (text::is_letter(w[i])) positions.push_back(i);
  }
  return positions;
}

template <typename T>
const T& choose(const std::vector<T>& items, Rng& rng) {
  return items[static_cast<std::size_t>(rng.uniform(items.size()))];
}

// Re-applies the capitalization pattern of `original` (all caps, or leading
// capital) to a lowercase dictionary candidate.
std::string apply_case(std::string_view original, const std::string& candidate) {
  const std::u32string w = text::to_u32(original);
  std::size_t letters = 0;
  std::size_t upper = 0;
  std::optional<bool> first_upper;
  for (char32_t c : w) {
    if (!text::is_letter(c)) continue;
    ++letters;
    if (text::is_uppercase(c)) ++upper;
    if (!first_upper) first_upper = text::is_uppercase(c);
  }
  if (letters >= 2 && upper == letters) return text::to_upper(candidate);
  if (first_upper.value_or(false)) {
    std::u32string c = text::to_u32(candidate);
    if (!c.empty()) c[0] = text::to_upper(c[0]);
    return text::to_utf8(c);
  }
  return candidate;
}

AdversarialExample substitute_from(std::string_view text, std::size_t target_token_index,
                                   const SubstitutionDictionary& dict, PerturbationKind kind,
                                   std::uint64_t seed) {
  const Target target = locate(text, target_token_index);
  const auto* entry = dict.candidates(target.word);
  if (entry == nullptr) {
    throw Error(ErrorCode::kNoCandidate, "no " + std::string(kind_name(kind)) +
                                             " candidates for '" + target.word + "'");
  }
  std::vector<std::string> usable;
  for (const std::string& candidate : *entry) {
    std::string cased = apply_case(target.word, candidate);
    if (cased != target.word && is_single_word(cased)) usable.push_back(std::move(cased));
  }
  if (usable.empty()) {
    throw Error(ErrorCode::kNoCandidate,
                "no single-word candidate differs from '" + target.word + "'");
  }
  Rng rng(seed);
  return make_example(text, target, target_token_index, kind, choose(usable, rng), seed);
}

}  // namespace

std::string_view kind_name(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::kTypoSwap: return "typo-swap";
    case PerturbationKind::kTypoSubstitute: return "typo-substitute";
    case PerturbationKind::kTypoDelete: return "typo-delete";
    case PerturbationKind::kTypoInsert: return "typo-insert";
    case PerturbationKind::kSynonym: return "synonym";
    case PerturbationKind::kHomoglyphWord: return "homoglyph";
    case PerturbationKind::kHomophone: return "homophone";
  }
  return "?";
}

PerturbationKind parse_kind(std::string_view name) {
  const std::string lower = text::to_lower(name);
  for (PerturbationKind kind : kAllPerturbationKinds) {
    if (kind_name(kind) == lower) return kind;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown perturbation kind '" + std::string(name) + "'");
}

bool is_typo(PerturbationKind kind) {
  return kind == PerturbationKind::kTypoSwap || kind == PerturbationKind::kTypoSubstitute ||
         kind == PerturbationKind::kTypoDelete || kind == PerturbationKind::kTypoInsert;
}

AdversarialExample perturb_typo(std::string_view text, std::size_t target_token_index,
                                PerturbationKind op, std::uint64_t seed) {
  if (!is_typo(op)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(kind_name(op)) + " is not a typo operation");
  }
  const Target target = locate(text, target_token_index);
  const std::u32string w = text::to_u32(target.word);
  const std::vector<std::size_t> letters = letter_positions(w);
  const std::size_t min_letters = op == PerturbationKind::kTypoInsert ? 1 : 2;
  if (letters.size() < min_letters) ineligible(target, "too short");

  Rng rng(seed);
  std::u32string out = w;
  switch (op) {
    case PerturbationKind::kTypoSwap: {
      std::vector<std::size_t> pairs;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (text::is_letter(w[i]) && text::is_letter(w[i + 1]) && w[i] != w[i + 1]) {
          pairs.push_back(i);
        }
      }
      if (pairs.empty()) ineligible(target, "no two distinct adjacent letters");
      const std::size_t i = choose(pairs, rng);
      std::swap(out[i], out[i + 1]);
      break;
    }
    case PerturbationKind::kTypoSubstitute: {
      const std::size_t i = choose(letters, rng);
      std::vector<char32_t> options;
      for (char c : kLowercaseAlphabet) {
        if (static_cast<char32_t>(c) != text::to_lower(w[i])) options.push_back(c);
      }
      out[i] = choose(options, rng);
      break;
    }
    case PerturbationKind::kTypoDelete: {
      std::vector<std::size_t> valid;
      for (std::size_t i : letters) {
        std::u32string candidate = w;
        candidate.erase(i, 1);
        if (is_single_word(text::to_utf8(candidate))) valid.push_back(i);
      }
      if (valid.empty()) ineligible(target, "no deletion leaves a single word");
      out.erase(choose(valid, rng), 1);
      break;
    }
    case PerturbationKind::kTypoInsert: {
      const auto pos = static_cast<std::size_t>(rng.uniform(w.size() + 1));
      const char letter = kLowercaseAlphabet[rng.uniform(kLowercaseAlphabet.size())];
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<char32_t>(letter));
      break;
    }
    default:
      break;
  }
  return make_example(text, target, target_token_index, op, text::to_utf8(out), seed);
}

AdversarialExample perturb_synonym(std::string_view text, std::size_t target_token_index,
                                   const SubstitutionDictionary& thesaurus, std::uint64_t seed) {
  return substitute_from(text, target_token_index, thesaurus, PerturbationKind::kSynonym, seed);
}

AdversarialExample perturb_homophone(std::string_view text, std::size_t target_token_index,
                                     const SubstitutionDictionary& homophones,
                                     std::uint64_t seed) {
  return substitute_from(text, target_token_index, homophones, PerturbationKind::kHomophone,
                         seed);
}

AdversarialExample perturb_homoglyph(std::string_view text, std::size_t target_token_index,
                                     const HomoglyphTable& table, std::uint64_t seed,
                                     std::size_t letters) {
  const Target target = locate(text, target_token_index);
  std::u32string w = text::to_u32(target.word);
  std::vector<std::size_t> positions = letter_positions(w);
  for (std::size_t i : positions) {
    if (!text::is_ascii_letter(w[i])) ineligible(target, "contains non-ASCII letters");
  }
  Rng rng(seed);
  if (letters != 0 && letters < positions.size()) {
    for (std::size_t i = 0; i < letters; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform(positions.size() - i));
      std::swap(positions[i], positions[j]);
    }
    positions.resize(letters);
    std::sort(positions.begin(), positions.end());
  }
  for (std::size_t i : positions) {
    const char32_t source = w[i];
    const char32_t glyph = choose(table.lookalikes(source), rng);
    char32_t replacement = glyph;
    if (text::is_uppercase(source)) {
      const char32_t upper = text::to_upper(glyph);
      if (upper != glyph && upper >= 0x80 && text::is_letter(upper)) replacement = upper;
    }
    w[i] = replacement;
  }
  return make_example(text, target, target_token_index, PerturbationKind::kHomoglyphWord,
                      text::to_utf8(w), seed);
}

AdversarialExample perturb_word(std::string_view text, std::size_t target_token_index,
                                PerturbationKind kind, const AttackResources& resources,
                                std::uint64_t seed) {
  switch (kind) {
    case PerturbationKind::kSynonym:
      return perturb_synonym(text, target_token_index, resources.synonyms, seed);
    case PerturbationKind::kHomophone:
      return perturb_homophone(text, target_token_index, resources.homophones, seed);
    case PerturbationKind::kHomoglyphWord:
      return perturb_homoglyph(text, target_token_index, resources.homoglyphs, seed,
                               resources.homoglyph_letters);
    default:
      return perturb_typo(text, target_token_index, kind, seed);
  }
}

AdversarialExample generate_attack(const Review& review, PerturbationKind kind,
                                   const WordScorer& scorer, const AttackResources& resources,
                                   std::uint64_t seed) {
  for (const WordImportance& candidate : rank_words(review.text, scorer)) {
    try {
      AdversarialExample ex =
          perturb_word(review.text, candidate.token_index, kind, resources,
                       derive_seed(seed, static_cast<std::uint64_t>(candidate.token_index)));
      ex.original_id = review.id;
      ex.seed = seed;
      return ex;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kIneligibleTarget && e.code() != ErrorCode::kNoCandidate) throw;
    }
  }
  throw Error(ErrorCode::kUnattackable, "review '" + review.id + "' has no word eligible for " +
                                            std::string(kind_name(kind)));
}

AdversarialExample generate_attack(const Review& review, PerturbationKind kind,
                                   const ValenceLexicon& lexicon,
                                   const AttackResources& resources, std::uint64_t seed) {
  return generate_attack(review, kind, valence_importance(lexicon), resources, seed);
}

AttackSpec AttackSpec::single(PerturbationKind kind) {
  return AttackSpec{std::string(kind_name(kind)), {kind}};
}

AttackSpec AttackSpec::parse(std::string_view name) {
  if (text::to_lower(name) == "typo") {
    return AttackSpec{"typo",
                      {PerturbationKind::kTypoSwap, PerturbationKind::kTypoSubstitute,
                       PerturbationKind::kTypoDelete, PerturbationKind::kTypoInsert}};
  }
  return single(parse_kind(name));
}

PerturbationKind AttackSpec::pick(std::uint64_t seed) const {
  if (kinds.empty()) throw Error(ErrorCode::kInvalidArgument, "attack '" + name + "' is empty");
  if (kinds.size() == 1) return kinds.front();
  Rng rng(derive_seed(seed, "attack-kind"));
  return kinds[static_cast<std::size_t>(rng.uniform(kinds.size()))];
}

AdversarialExample generate_attack(const Review& review, const AttackSpec& attack,
                                   const WordScorer& scorer, const AttackResources& resources,
                                   std::uint64_t seed) {
  return generate_attack(review, attack.pick(seed), scorer, resources, seed);
}

}  // namespace sentiqa
