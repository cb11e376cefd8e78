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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "generators.h"
#include "oracles.h"
#include "sentiqa/error.h"

namespace sentiqa {
namespace {

const AttackResources& bundled() {
  static const AttackResources res = AttackResources::load(bundled_resource_dir());
  return res;
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::set<std::string> outputs(std::string_view text, std::size_t index, PerturbationKind op,
                              int seeds = 2000) {
  std::set<std::string> out;
  for (int s = 0; s < seeds; ++s) {
    out.insert(perturb_typo(text, index, op, static_cast<std::uint64_t>(s)).perturbed_word);
  }
  return out;
}

TEST(KindTest, NamesRoundTrip) {
  for (PerturbationKind kind : kAllPerturbationKinds) {
    EXPECT_EQ(parse_kind(kind_name(kind)), kind);
  }
  EXPECT_EQ(parse_kind("HOMOGLYPH"), PerturbationKind::kHomoglyphWord);
  EXPECT_THROW(parse_kind("leet"), Error);
  EXPECT_TRUE(is_typo(PerturbationKind::kTypoInsert));
  EXPECT_FALSE(is_typo(PerturbationKind::kSynonym));
}

TEST(TypoSwapTest, EnumeratesTheFourSwapsOfGreat) {
  std::map<std::string, int> counts;
  for (int s = 0; s < 4000; ++s) {
    ++counts[perturb_typo("great", 0, PerturbationKind::kTypoSwap, s).perturbed_word];
  }
  const std::set<std::string> expected = {"rgeat", "gerat", "graet", "greta"};
  std::set<std::string> seen;
  for (const auto& [w, n] : counts) {
    seen.insert(w);
    EXPECT_NEAR(n, 1000, 120) << w;
  }
  EXPECT_EQ(seen, expected);
}

TEST(TypoSwapTest, SkipsEqualNeighboursAndShortWords) {
  EXPECT_EQ(outputs("book", 0, PerturbationKind::kTypoSwap),
            (std::set<std::string>{"obok", "boko"}));
  EXPECT_EQ(code_of([] { perturb_typo("aaa", 0, PerturbationKind::kTypoSwap, 1); }),
            ErrorCode::kIneligibleTarget);
  EXPECT_EQ(code_of([] { perturb_typo("I", 0, PerturbationKind::kTypoSwap, 1); }),
            ErrorCode::kIneligibleTarget);
}

TEST(TypoSubstituteTest, ReplacesOneLetterWithADifferentLowercaseLetter) {
  for (int s = 0; s < 500; ++s) {
    const auto ex = perturb_typo("Good day", 0, PerturbationKind::kTypoSubstitute, s);
    EXPECT_EQ(oracle::levenshtein(ex.original_word, ex.perturbed_word), 1u);
    EXPECT_EQ(ex.perturbed_word.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
      if (ex.perturbed_word[i] != ex.original_word[i]) {
        EXPECT_TRUE(ex.perturbed_word[i] >= 'a' && ex.perturbed_word[i] <= 'z');
        EXPECT_NE(ex.perturbed_word[i], std::tolower(ex.original_word[i]));
      }
    }
    EXPECT_EQ(ex.perturbed_text, ex.perturbed_word + " day");
  }
  // 2 positions x 25 letters.
  EXPECT_EQ(outputs("ab", 0, PerturbationKind::kTypoSubstitute, 5000).size(), 50u);
}

TEST(TypoDeleteTest, KeepsASingleWord) {
  EXPECT_EQ(outputs("ab", 0, PerturbationKind::kTypoDelete), (std::set<std::string>{"a", "b"}));
  // Dropping the final t would leave a dangling apostrophe.
  const auto dont = outputs("don't", 0, PerturbationKind::kTypoDelete);
  EXPECT_EQ(dont, (std::set<std::string>{"on't", "dn't", "do't"}));
}

TEST(TypoInsertTest, AddsOneLowercaseLetterAnywhere) {
  const auto out = outputs("I", 0, PerturbationKind::kTypoInsert, 5000);
  EXPECT_EQ(out.size(), 52u);  // before or after, 26 letters
  for (const std::string& w : out) EXPECT_EQ(oracle::levenshtein("I", w), 1u);
}

TEST(TypoTest, TargetsTheIndexedWordOnly) {
  const auto ex = perturb_typo("It is, truly, great!", 3, PerturbationKind::kTypoSwap, 9);
  EXPECT_EQ(ex.original_word, "great");
  EXPECT_EQ(ex.target_token_index, 3u);
  EXPECT_EQ(ex.perturbed_text.substr(0, 14), "It is, truly, ");
  EXPECT_EQ(ex.perturbed_text.back(), '!');
  EXPECT_EQ(code_of([] { perturb_typo("two words", 2, PerturbationKind::kTypoSwap, 1); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { perturb_typo("x", 0, PerturbationKind::kSynonym, 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(TypoTest, DeterministicPerSeed) {
  for (PerturbationKind op : {PerturbationKind::kTypoSwap, PerturbationKind::kTypoSubstitute,
                              PerturbationKind::kTypoDelete, PerturbationKind::kTypoInsert}) {
    EXPECT_EQ(perturb_typo("wonderful", 0, op, 77), perturb_typo("wonderful", 0, op, 77));
  }
}

TEST(SynonymTest, RestoresCaseAndSkipsMultiWordCandidates) {
  const SubstitutionDictionary dict({{"good", {"first rate", "fine"}}});
  for (int s = 0; s < 50; ++s) {
    EXPECT_EQ(perturb_synonym("good", 0, dict, s).perturbed_word, "fine");
    EXPECT_EQ(perturb_synonym("Good", 0, dict, s).perturbed_word, "Fine");
    EXPECT_EQ(perturb_synonym("GOOD!", 0, dict, s).perturbed_word, "FINE");
  }
  EXPECT_EQ(perturb_synonym("It is good.", 2, dict, 0).perturbed_text, "It is fine.");
  EXPECT_EQ(code_of([&] { perturb_synonym("bad", 0, dict, 0); }), ErrorCode::kNoCandidate);
  const SubstitutionDictionary only_multi(
      std::map<std::string, std::vector<std::string>>{{"good", {"first rate"}}});
  EXPECT_EQ(code_of([&] { perturb_synonym("good", 0, only_multi, 0); }), ErrorCode::kNoCandidate);
}

TEST(SynonymTest, BundledThesaurus) {
  const auto ex = perturb_synonym("A terrible toaster", 1, bundled().synonyms, 3);
  const auto& candidates = *bundled().synonyms.candidates("terrible");
  EXPECT_NE(std::find(candidates.begin(), candidates.end(), ex.perturbed_word), candidates.end());
}

TEST(HomophoneTest, BundledPairs) {
  EXPECT_EQ(perturb_homophone("great", 0, bundled().homophones, 0).perturbed_word, "grate");
  EXPECT_EQ(perturb_homophone("Great", 0, bundled().homophones, 0).perturbed_word, "Grate");
  std::set<std::string> two;
  for (int s = 0; s < 100; ++s) {
    two.insert(perturb_homophone("Two", 0, bundled().homophones, s).perturbed_word);
  }
  EXPECT_EQ(two, (std::set<std::string>{"To", "Too"}));
  EXPECT_EQ(code_of([] { perturb_homophone("poor", 0, bundled().homophones, 0); }),
            ErrorCode::kNoCandidate);
}

TEST(HomoglyphTest, WholeWordHasNoAsciiLetters) {
  for (int s = 0; s < 200; ++s) {
    const auto ex = perturb_homoglyph("so great!", 1, bundled().homoglyphs, s);
    EXPECT_FALSE(oracle::has_ascii_letter(ex.perturbed_word)) << ex.perturbed_word;
    EXPECT_EQ(oracle::codepoints(ex.perturbed_word), 5u);
    EXPECT_EQ(ex.perturbed_text, "so " + ex.perturbed_word + "!");
  }
}

TEST(HomoglyphTest, PartialReplacementChangesExactlyThatManyLetters) {
  for (std::size_t k = 1; k <= 5; ++k) {
    for (int s = 0; s < 50; ++s) {
      const auto ex = perturb_homoglyph("great", 0, bundled().homoglyphs, s, k);
      const auto before = *oracle::decode_utf8("great");
      const auto after = *oracle::decode_utf8(ex.perturbed_word);
      ASSERT_EQ(after.size(), 5u);
      std::size_t changed = 0;
      for (std::size_t i = 0; i < 5; ++i) changed += before[i] != after[i] ? 1 : 0;
      EXPECT_EQ(changed, k);
    }
  }
}

TEST(HomoglyphTest, UppercaseUsesUppercaseLookalike) {
  const auto ex = perturb_homoglyph("A", 0, bundled().homoglyphs, 0);
  const auto cps = *oracle::decode_utf8(ex.perturbed_word);
  ASSERT_EQ(cps.size(), 1u);
  // a -> U+0430 / U+0251 / U+03B1; their capitals are U+0410, U+2C6D, U+0391.
  EXPECT_TRUE(cps[0] == 0x0410 || cps[0] == 0x2C6D || cps[0] == 0x0391) << std::hex << static_cast<std::uint32_t>(cps[0]);
}

TEST(HomoglyphTest, NonAsciiWordsAreIneligible) {
  EXPECT_EQ(code_of([] { perturb_homoglyph("café", 0, bundled().homoglyphs, 0); }),
            ErrorCode::kIneligibleTarget);
}

TEST(HomoglyphTest, ApostrophesStayInPlace) {
  const auto ex = perturb_homoglyph("don't", 0, bundled().homoglyphs, 4);
  const auto cps = *oracle::decode_utf8(ex.perturbed_word);
  ASSERT_EQ(cps.size(), 5u);
  EXPECT_EQ(cps[3], U'\'');
  EXPECT_FALSE(oracle::has_ascii_letter(ex.perturbed_word));
}

TEST(GenerateAttackTest, TargetsTheMostImportantEligibleWord) {
  const WordScorer scorer = [](std::string_view w) {
    if (w == "aa") return 3.0;
    if (w == "I") return 2.0;
    if (w == "cd") return 1.0;
    return 0.0;
  };
  const Review review{"r1", "aa I cd ef", SentimentLabel::kPositive};
  const auto ex = generate_attack(review, PerturbationKind::kTypoSwap, scorer, bundled(), 5);
  EXPECT_EQ(ex.target_token_index, 2u);
  EXPECT_EQ(ex.perturbed_text, "aa I dc ef");
  EXPECT_EQ(ex.original_id, "r1");
  EXPECT_EQ(ex.seed, 5u);
}

TEST(GenerateAttackTest, UnattackableWhenNothingQualifies) {
  const Review review{"r2", "I a", SentimentLabel::kNeutral};
  const WordScorer flat = [](std::string_view) { return 0.0; };
  EXPECT_EQ(code_of([&] {
              generate_attack(review, PerturbationKind::kTypoSwap, flat, bundled(), 0);
            }),
            ErrorCode::kUnattackable);
  EXPECT_EQ(code_of([&] {
              generate_attack(review, PerturbationKind::kSynonym, flat, bundled(), 0);
            }),
            ErrorCode::kUnattackable);
}

TEST(GenerateAttackTest, LexiconOverloadRanksByValence) {
  const ValenceLexicon lex({{"great", 3.1}, {"good", 1.9}});
  const Review review{"r3", "Good box, great price", SentimentLabel::kPositive};
  const auto ex = generate_attack(review, PerturbationKind::kSynonym, lex, bundled(), 1);
  EXPECT_EQ(ex.original_word, "great");
}

TEST(AttackSpecTest, ParseAndPick) {
  const AttackSpec typo = AttackSpec::parse("typo");
  EXPECT_EQ(typo.name, "typo");
  EXPECT_EQ(typo.kinds.size(), 4u);
  std::set<PerturbationKind> picked;
  for (std::uint64_t s = 0; s < 200; ++s) {
    picked.insert(typo.pick(s));
    EXPECT_EQ(typo.pick(s), typo.pick(s));
  }
  EXPECT_EQ(picked.size(), 4u);
  const AttackSpec syn = AttackSpec::parse("synonym");
  EXPECT_EQ(syn.name, "synonym");
  EXPECT_EQ(syn.pick(99), PerturbationKind::kSynonym);
  EXPECT_EQ(AttackSpec::single(PerturbationKind::kTypoDelete).name, "typo-delete");
  EXPECT_THROW(AttackSpec::parse("typos"), Error);
}

TEST(PerturbPropertyTest, EveryKindEditsExactlyOneWord) {
  gen::Engine g(31);
  const ValenceLexicon lex({{"good", 1.9}, {"great", 3.1}, {"bad", -2.5}, {"terrible", -2.1}});
  std::size_t produced = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Review review{"p" + std::to_string(trial), gen::review_text(g, 2, 20),
                        SentimentLabel::kNeutral};
    for (PerturbationKind kind : kAllPerturbationKinds) {
      AdversarialExample ex;
      try {
        ex = generate_attack(review, kind, lex, bundled(), static_cast<std::uint64_t>(trial));
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::kUnattackable);
        continue;
      }
      ++produced;
      const auto chunks = oracle::differing_chunks(review.text, ex.perturbed_text);
      ASSERT_TRUE(chunks.has_value()) << review.text << " => " << ex.perturbed_text;
      EXPECT_EQ(chunks->size(), 1u) << review.text << " => " << ex.perturbed_text;
      const auto a = tokenize(review.text);
      const auto b = tokenize(ex.perturbed_text);
      ASSERT_EQ(a.size(), b.size());
      std::size_t diffs = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].text == b[i].text) continue;
        ++diffs;
        EXPECT_EQ(a[i].kind, TokenKind::kWord);
        EXPECT_EQ(b[i].kind, TokenKind::kWord);
        EXPECT_EQ(a[i].text, ex.original_word);
        EXPECT_EQ(b[i].text, ex.perturbed_word);
      }
      EXPECT_EQ(diffs, 1u);
    }
  }
  EXPECT_GT(produced, 700u);
}

}  // namespace
}  // namespace sentiqa
