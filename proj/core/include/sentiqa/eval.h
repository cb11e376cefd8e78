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

#ifndef SENTIQA_EVAL_H_
#define SENTIQA_EVAL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentiqa/client.h"
#include "sentiqa/corpus.h"
#include "sentiqa/labels.h"
#include "sentiqa/perturb.h"
#include "sentiqa/prompt.h"

namespace sentiqa {

// The fate of one sample under an attack. UNATTACKABLE samples keep their
// baseline text and prediction.
enum class Transition {
  kCorrectStayed,
  kCorrectFlipped,
  kWrongStayed,
  kWrongFixed,
  kUnattackable,
};

std::string_view transition_name(Transition t);
Transition parse_transition(std::string_view name);

// perturbed == nullopt means the sample could not be attacked.
Transition classify_transition(SentimentLabel gold, Verdict baseline,
                               std::optional<Verdict> perturbed);

// Rows are gold labels, columns predicted labels, both in label axis order.
// INVALID predictions are counted per gold row in a separate column.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> cells{};
  std::array<std::size_t, kNumLabels> invalid_by_gold{};

  void add(SentimentLabel gold, Verdict predicted);
  std::size_t count(SentimentLabel gold, Verdict predicted) const;
  std::size_t row_total(SentimentLabel gold) const;
  std::size_t invalid_count() const;
  std::size_t total() const;

  bool operator==(const ConfusionMatrix&) const = default;
};

struct SampleRecord {
  std::string id;
  SentimentLabel gold = SentimentLabel::kNeutral;
  Verdict baseline = Verdict::kInvalid;
  std::string baseline_raw;
  // Why the baseline verdict is INVALID (empty otherwise).
  std::string baseline_error;

  // Set once the attack phase has run.
  std::optional<Transition> transition;
  std::optional<AdversarialExample> attack;
  std::optional<Verdict> perturbed;
  std::string perturbed_raw;
  // Perturbation or classification failure for this sample.
  std::string perturbed_error;

  bool operator==(const SampleRecord&) const = default;
};

enum class Phase { kBaseline, kPerturbed };

// Correct / total over all records; INVALID counts as wrong. In the
// PERTURBED phase an UNATTACKABLE record counts with its baseline verdict.
// Throws Error(kEmptyInput) for no records and Error(kInvalidArgument) for
// PERTURBED before the attack phase.
double accuracy(std::span<const SampleRecord> records, Phase phase);

// CORRECT_FLIPPED / total records.
double attack_success_rate(std::span<const SampleRecord> records);

ConfusionMatrix confusion(std::span<const SampleRecord> records, Phase phase);

struct RunMetadata {
  std::string corpus;
  std::string template_name;
  std::string backend;
  std::string model_id;
  double temperature = 0.0;
  // Attack name; empty for baseline-only reports.
  std::string attack;
  std::uint64_t seed = 0;

  bool operator==(const RunMetadata&) const = default;
};

struct EvalReport {
  RunMetadata metadata;
  double ori_acc = 0.0;
  ConfusionMatrix baseline_confusion;
  // Attack metrics; absent on baseline-only reports.
  std::optional<double> pert_acc;
  std::optional<double> delta_diff;
  std::optional<double> asr;
  std::optional<ConfusionMatrix> perturbed_confusion;
  std::size_t unattackable = 0;
  std::vector<SampleRecord> records;

  bool operator==(const EvalReport&) const = default;
};

struct EvalOptions {
  // Samples classified concurrently.
  std::size_t concurrency = 1;
};

struct BaselineRun {
  std::vector<SampleRecord> records;
  ConfusionMatrix confusion;
  std::size_t transport_failures = 0;
};

// One render → classify per review. Per-sample failures become INVALID
// verdicts; the run always completes.
BaselineRun run_baseline(std::span<const Review> corpus, const PromptTemplate& prompt,
                         Classifier& classifier, const EvalOptions& options = {});

EvalReport baseline_report(const BaselineRun& baseline, RunMetadata metadata);

struct AttackRun {
  EvalReport report;
  std::size_t transport_failures = 0;
};

// Perturbs every review (per-sample seed derived from seed and the review id),
// classifies the perturbed texts and fills in the attack metrics. corpus and
// baseline must list the same reviews in the same order. Throws
// Error(kConfig) before any classification when the resources cannot serve
// the attack.
AttackRun run_attack(std::span<const Review> corpus, const BaselineRun& baseline,
                     const AttackSpec& attack, const WordScorer& scorer,
                     const AttackResources& resources, const PromptTemplate& prompt,
                     Classifier& classifier, std::uint64_t seed, RunMetadata metadata,
                     const EvalOptions& options = {});

// Seed used for the review with this id in a run seeded with run_seed.
std::uint64_t sample_seed(std::uint64_t run_seed, std::string_view review_id);

struct StabilityReport {
  std::string input_id;
  std::size_t n_trials = 0;
  // Indexed by Verdict (POSITIVE, NEUTRAL, NEGATIVE, INVALID).
  std::array<std::size_t, 4> responses{};
  // 1 - modal count / n_trials.
  double disagreement_rate = 0.0;
  // Every trial was INVALID.
  bool all_invalid = false;

  bool operator==(const StabilityReport&) const = default;
};

// n_trials independent classifications of the same review; the cache is
// bypassed. Throws Error(kInvalidArgument) when n_trials < 2.
StabilityReport stability_probe(const Review& review, const PromptTemplate& prompt,
                                Classifier& classifier, std::size_t n_trials);

StabilityReport summarize_trials(std::string input_id, std::span<const Verdict> trials);

struct LabelChange {
  std::string id;
  Phase phase = Phase::kBaseline;
  Verdict before = Verdict::kInvalid;
  Verdict after = Verdict::kInvalid;

  bool operator==(const LabelChange&) const = default;
};

// b relative to a. Per-class deltas are differences in per-gold-class
// accuracy (recall). Confusion deltas have an INVALID column at index 3.
struct PhaseDrift {
  double accuracy_delta = 0.0;
  std::array<double, kNumLabels> per_class_accuracy_delta{};
  std::array<std::array<long, 4>, kNumLabels> confusion_delta{};
};

struct DriftSummary {
  PhaseDrift baseline;
  // Present when both reports ran the same attack.
  std::optional<PhaseDrift> perturbed;
  std::vector<LabelChange> changes;

  bool is_zero() const;
};

// Throws Error(kMismatch) unless both reports cover the same review ids
// (with the same gold labels) under the same template.
DriftSummary compare_runs(const EvalReport& a, const EvalReport& b);

}  // namespace sentiqa

#endif  // SENTIQA_EVAL_H_
