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

#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

#include "sentiqa/client.h"
#include "sentiqa/eval.h"
#include "sentiqa/lexicon.h"
#include "sentiqa/perturb.h"
#include "sentiqa/prompt.h"
#include "sentiqa/resources.h"
#include "sentiqa/rng.h"

namespace {

using namespace sentiqa;

const std::vector<std::string> kWords = {
    "the",   "battery", "is",     "great",  "but",  "screen", "not",  "very",   "bright",
    "I",     "love",    "this",   "awful",  "case", "don't",  "buy",  "cheap",  "quality",
    "works", "fine",    "broken", "after",  "two",  "days",   "nice", "sound",  "terrible"};

std::string review_of(std::size_t words, std::uint64_t seed) {
  Rng rng(seed);
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) text += ' ';
    text += kWords[static_cast<std::size_t>(rng.uniform(kWords.size()))];
  }
  return text + ".";
}

const ValenceLexicon& lexicon() {
  static const ValenceLexicon lex = ValenceLexicon::load(bundled_resource_dir() / kLexiconFile);
  return lex;
}

const AttackResources& resources() {
  static const AttackResources res = AttackResources::load(bundled_resource_dir());
  return res;
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text = review_of(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(16)->Arg(128)->Arg(1024);

void BM_RankWords(benchmark::State& state) {
  const std::string text = review_of(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rank_words(text, lexicon()));
}
BENCHMARK(BM_RankWords)->Arg(16)->Arg(128)->Arg(1024);

void BM_GenerateAttack(benchmark::State& state) {
  const auto kind = kAllPerturbationKinds[static_cast<std::size_t>(state.range(0))];
  Review review{"b", review_of(40, 3), SentimentLabel::kPositive};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_attack(review, kind, lexicon(), resources(), seed++));
  }
  state.SetLabel(std::string(kind_name(kind)));
}
BENCHMARK(BM_GenerateAttack)->DenseRange(0, static_cast<int>(kAllPerturbationKinds.size()) - 1);

void BM_MockPipeline(benchmark::State& state) {
  std::vector<Review> corpus;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    corpus.push_back({"r" + std::to_string(i), review_of(30, 100 + static_cast<std::uint64_t>(i)),
                      SentimentLabel::kPositive});
  }
  const auto lex = std::make_shared<const ValenceLexicon>(lexicon());
  const PromptTemplate prompt = builtin_template("zero_shot");
  const AttackSpec attack = AttackSpec::parse("synonym");
  for (auto _ : state) {
    Classifier classifier(std::make_shared<MockBackend>(lex), ClassifierConfig{},
                          std::make_shared<ResponseCache>());
    const BaselineRun baseline = run_baseline(corpus, prompt, classifier);
    benchmark::DoNotOptimize(run_attack(corpus, baseline, attack, valence_importance(*lex),
                                        resources(), prompt, classifier, 0, RunMetadata{}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MockPipeline)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
