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

#ifndef SENTIQA_PERTURB_H_
#define SENTIQA_PERTURB_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sentiqa/corpus.h"
#include "sentiqa/lexicon.h"
#include "sentiqa/resources.h"

namespace sentiqa {

enum class PerturbationKind {
  kTypoSwap,
  kTypoSubstitute,
  kTypoDelete,
  kTypoInsert,
  kSynonym,
  kHomoglyphWord,
  kHomophone,
};

inline constexpr std::array<PerturbationKind, 7> kAllPerturbationKinds = {
    PerturbationKind::kTypoSwap,   PerturbationKind::kTypoSubstitute,
    PerturbationKind::kTypoDelete, PerturbationKind::kTypoInsert,
    PerturbationKind::kSynonym,    PerturbationKind::kHomoglyphWord,
    PerturbationKind::kHomophone};

// "typo-swap", "typo-substitute", "typo-delete", "typo-insert", "synonym",
// "homoglyph", "homophone".
std::string_view kind_name(PerturbationKind kind);
PerturbationKind parse_kind(std::string_view name);
bool is_typo(PerturbationKind kind);

// One perturbed copy of a text. Exactly one WORD token differs from the
// original; every other token is byte-identical.
struct AdversarialExample {
  std::string original_id;
  std::string perturbed_text;
  PerturbationKind kind = PerturbationKind::kSynonym;
  // Position among the WORD tokens of the original text.
  std::size_t target_token_index = 0;
  std::string original_word;
  std::string perturbed_word;
  std::uint64_t seed = 0;

  bool operator==(const AdversarialExample&) const = default;
};

// The error contract shared by the generators below:
//   kInvalidArgument   target_token_index is not a WORD of the text
//   kIneligibleTarget  the word cannot take this perturbation (too short,
//                      no distinct adjacent letters, non-ASCII letters for
//                      homoglyphs, ...)
//   kNoCandidate       no dictionary entry yields a usable replacement

// Applies one typo operation to the target word. `op` must be a typo kind.
AdversarialExample perturb_typo(std::string_view text, std::size_t target_token_index,
                                PerturbationKind op, std::uint64_t seed);

AdversarialExample perturb_synonym(std::string_view text, std::size_t target_token_index,
                                   const SubstitutionDictionary& thesaurus, std::uint64_t seed);

// letters == 0 replaces every letter of the word (word-level); otherwise that
// many distinct letters are replaced (character-level).
AdversarialExample perturb_homoglyph(std::string_view text, std::size_t target_token_index,
                                     const HomoglyphTable& table, std::uint64_t seed,
                                     std::size_t letters = 0);

AdversarialExample perturb_homophone(std::string_view text, std::size_t target_token_index,
                                     const SubstitutionDictionary& homophones,
                                     std::uint64_t seed);

// Dispatches on kind.
AdversarialExample perturb_word(std::string_view text, std::size_t target_token_index,
                                PerturbationKind kind, const AttackResources& resources,
                                std::uint64_t seed);

// Walks the words of the review from most to least important and returns the
// first successful perturbation. Throws Error(kUnattackable) if no word can
// be perturbed.
AdversarialExample generate_attack(const Review& review, PerturbationKind kind,
                                   const WordScorer& scorer, const AttackResources& resources,
                                   std::uint64_t seed);
AdversarialExample generate_attack(const Review& review, PerturbationKind kind,
                                   const ValenceLexicon& lexicon,
                                   const AttackResources& resources, std::uint64_t seed);

// A named attack: one kind, or a family whose member is drawn per sample
// from the seed ("typo" = the four typo operations).
struct AttackSpec {
  std::string name;
  std::vector<PerturbationKind> kinds;

  static AttackSpec single(PerturbationKind kind);
  // Accepts every kind_name() plus "typo".
  static AttackSpec parse(std::string_view name);

  PerturbationKind pick(std::uint64_t seed) const;
};

AdversarialExample generate_attack(const Review& review, const AttackSpec& attack,
                                   const WordScorer& scorer, const AttackResources& resources,
                                   std::uint64_t seed);

}  // namespace sentiqa

#endif  // SENTIQA_PERTURB_H_
