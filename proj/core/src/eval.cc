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

#include "sentiqa/eval.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "sentiqa/error.h"
#include "sentiqa/rng.h"

namespace sentiqa {
namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. fn must not throw.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

struct Outcome {
  Verdict verdict = Verdict::kInvalid;
  std::string raw;
  std::string error;
  bool transport_failed = false;
};

Outcome classify_text(Classifier& classifier, const PromptTemplate& prompt,
                      const std::string& text) {
  Outcome out;
  try {
    ClassificationResult result = classifier.classify({render(prompt, text), text});
    out.verdict = to_verdict(result.predicted);
    out.raw = std::move(result.raw_response);
  } catch (const LabelParseError& e) {
    out.raw = e.raw_response();
    out.error = e.what();
  } catch (const TransportError& e) {
    out.error = e.what();
    out.transport_failed = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

void require_records(std::span<const SampleRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no records");
}

void require_attacked(std::span<const SampleRecord> records) {
  for (const SampleRecord& r : records) {
    if (!r.transition) {
      throw Error(ErrorCode::kInvalidArgument,
                  "record '" + r.id + "' has no attack result; run the attack phase first");
    }
  }
}

// The verdict that stands for a record in the given phase.
Verdict phase_verdict(const SampleRecord& r, Phase phase) {
  if (phase == Phase::kBaseline) return r.baseline;
  return r.perturbed.value_or(r.baseline);
}

PhaseDrift phase_drift(std::span<const SampleRecord> a, std::span<const SampleRecord> b,
                       Phase phase) {
  PhaseDrift drift;
  drift.accuracy_delta = accuracy(b, phase) - accuracy(a, phase);
  const ConfusionMatrix ca = confusion(a, phase);
  const ConfusionMatrix cb = confusion(b, phase);
  for (SentimentLabel gold : kAllLabels) {
    const std::size_t g = index_of(gold);
    for (std::size_t p = 0; p < kNumLabels; ++p) {
      drift.confusion_delta[g][p] =
          static_cast<long>(cb.cells[g][p]) - static_cast<long>(ca.cells[g][p]);
    }
    drift.confusion_delta[g][3] =
        static_cast<long>(cb.invalid_by_gold[g]) - static_cast<long>(ca.invalid_by_gold[g]);
    const std::size_t rows = ca.row_total(gold);
    if (rows > 0) {
      drift.per_class_accuracy_delta[g] =
          (static_cast<double>(cb.cells[g][g]) - static_cast<double>(ca.cells[g][g])) /
          static_cast<double>(rows);
    }
  }
  return drift;
}

bool is_zero(const PhaseDrift& d) {
  if (d.accuracy_delta != 0.0) return false;
  for (double v : d.per_class_accuracy_delta) {
    if (v != 0.0) return false;
  }
  for (const auto& row : d.confusion_delta) {
    for (long v : row) {
      if (v != 0) return false;
    }
  }
  return true;
}

}  // namespace

std::string_view transition_name(Transition t) {
  switch (t) {
    case Transition::kCorrectStayed: return "CORRECT_STAYED";
    case Transition::kCorrectFlipped: return "CORRECT_FLIPPED";
    case Transition::kWrongStayed: return "WRONG_STAYED";
    case Transition::kWrongFixed: return "WRONG_FIXED";
    case Transition::kUnattackable: return "UNATTACKABLE";
  }
  return "?";
}

Transition parse_transition(std::string_view name) {
  for (Transition t : {Transition::kCorrectStayed, Transition::kCorrectFlipped,
                       Transition::kWrongStayed, Transition::kWrongFixed,
                       Transition::kUnattackable}) {
    if (transition_name(t) == name) return t;
  }
  throw Error(ErrorCode::kParse, "unknown transition '" + std::string(name) + "'");
}

Transition classify_transition(SentimentLabel gold, Verdict baseline,
                               std::optional<Verdict> perturbed) {
  if (!perturbed) return Transition::kUnattackable;
  const bool was_correct = is_correct(baseline, gold);
  const bool now_correct = is_correct(*perturbed, gold);
  if (was_correct) return now_correct ? Transition::kCorrectStayed : Transition::kCorrectFlipped;
  return now_correct ? Transition::kWrongFixed : Transition::kWrongStayed;
}

void ConfusionMatrix::add(SentimentLabel gold, Verdict predicted) {
  if (auto label = verdict_label(predicted)) {
    ++cells[index_of(gold)][index_of(*label)];
  } else {
    ++invalid_by_gold[index_of(gold)];
  }
}

std::size_t ConfusionMatrix::count(SentimentLabel gold, Verdict predicted) const {
  if (auto label = verdict_label(predicted)) return cells[index_of(gold)][index_of(*label)];
  return invalid_by_gold[index_of(gold)];
}

std::size_t ConfusionMatrix::row_total(SentimentLabel gold) const {
  const auto& row = cells[index_of(gold)];
  std::size_t n = invalid_by_gold[index_of(gold)];
  for (std::size_t c : row) n += c;
  return n;
}

std::size_t ConfusionMatrix::invalid_count() const {
  std::size_t n = 0;
  for (std::size_t c : invalid_by_gold) n += c;
  return n;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (SentimentLabel gold : kAllLabels) n += row_total(gold);
  return n;
}

double accuracy(std::span<const SampleRecord> records, Phase phase) {
  require_records(records);
  if (phase == Phase::kPerturbed) require_attacked(records);
  std::size_t correct = 0;
  for (const SampleRecord& r : records) {
    if (is_correct(phase_verdict(r, phase), r.gold)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

double attack_success_rate(std::span<const SampleRecord> records) {
  require_records(records);
  require_attacked(records);
  const auto flips = std::count_if(records.begin(), records.end(), [](const SampleRecord& r) {
    return r.transition == Transition::kCorrectFlipped;
  });
  return static_cast<double>(flips) / static_cast<double>(records.size());
}

ConfusionMatrix confusion(std::span<const SampleRecord> records, Phase phase) {
  ConfusionMatrix m;
  for (const SampleRecord& r : records) m.add(r.gold, phase_verdict(r, phase));
  return m;
}

BaselineRun run_baseline(std::span<const Review> corpus, const PromptTemplate& prompt,
                         Classifier& classifier, const EvalOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyInput, "corpus is empty");
  prompt.validate();
  BaselineRun run;
  run.records.resize(corpus.size());
  std::vector<char> failed(corpus.size(), 0);
  parallel_for(corpus.size(), options.concurrency, [&](std::size_t i) {
    const Review& review = corpus[i];
    Outcome out = classify_text(classifier, prompt, review.text);
    SampleRecord& rec = run.records[i];
    rec.id = review.id;
    rec.gold = review.label;
    rec.baseline = out.verdict;
    rec.baseline_raw = std::move(out.raw);
    rec.baseline_error = std::move(out.error);
    failed[i] = out.transport_failed ? 1 : 0;
  });
  run.transport_failures = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  run.confusion = confusion(run.records, Phase::kBaseline);
  return run;
}

EvalReport baseline_report(const BaselineRun& baseline, RunMetadata metadata) {
  EvalReport report;
  report.metadata = std::move(metadata);
  report.metadata.attack.clear();
  report.records = baseline.records;
  report.ori_acc = accuracy(report.records, Phase::kBaseline);
  report.baseline_confusion = baseline.confusion;
  return report;
}

std::uint64_t sample_seed(std::uint64_t run_seed, std::string_view review_id) {
  return derive_seed(run_seed, review_id);
}

AttackRun run_attack(std::span<const Review> corpus, const BaselineRun& baseline,
                     const AttackSpec& attack, const WordScorer& scorer,
                     const AttackResources& resources, const PromptTemplate& prompt,
                     Classifier& classifier, std::uint64_t seed, RunMetadata metadata,
                     const EvalOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyInput, "corpus is empty");
  if (corpus.size() != baseline.records.size()) {
    throw Error(ErrorCode::kMismatch, "baseline and corpus differ in size");
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].id != baseline.records[i].id) {
      throw Error(ErrorCode::kMismatch, "baseline record " + std::to_string(i) + " is '" +
                                            baseline.records[i].id + "', corpus has '" +
                                            corpus[i].id + "'");
    }
  }
  if (attack.kinds.empty()) throw Error(ErrorCode::kConfig, "attack has no perturbation kinds");
  for (PerturbationKind kind : attack.kinds) {
    if (kind == PerturbationKind::kSynonym && resources.synonyms.empty()) {
      throw Error(ErrorCode::kConfig, "synonym attack needs a non-empty thesaurus");
    }
    if (kind == PerturbationKind::kHomophone && resources.homophones.empty()) {
      throw Error(ErrorCode::kConfig, "homophone attack needs a non-empty homophone list");
    }
  }
  prompt.validate();

  AttackRun run;
  EvalReport& report = run.report;
  report.metadata = std::move(metadata);
  report.metadata.attack = attack.name;
  report.metadata.seed = seed;
  report.records = baseline.records;
  std::vector<char> failed(corpus.size(), 0);
  parallel_for(corpus.size(), options.concurrency, [&](std::size_t i) {
    SampleRecord& rec = report.records[i];
    rec.attack.reset();
    rec.perturbed.reset();
    rec.perturbed_raw.clear();
    rec.perturbed_error.clear();
    try {
      rec.attack = generate_attack(corpus[i], attack, scorer, resources,
                                   sample_seed(seed, corpus[i].id));
    } catch (const Error& e) {
      // Unattackable, or a resource gap on this sample's letters.
      rec.perturbed_error = e.what();
    }
    if (rec.attack) {
      Outcome out = classify_text(classifier, prompt, rec.attack->perturbed_text);
      rec.perturbed = out.verdict;
      rec.perturbed_raw = std::move(out.raw);
      rec.perturbed_error = std::move(out.error);
      failed[i] = out.transport_failed ? 1 : 0;
    }
    rec.transition = classify_transition(rec.gold, rec.baseline, rec.perturbed);
  });
  run.transport_failures = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));

  report.ori_acc = accuracy(report.records, Phase::kBaseline);
  report.pert_acc = accuracy(report.records, Phase::kPerturbed);
  report.delta_diff = report.ori_acc - *report.pert_acc;
  report.asr = attack_success_rate(report.records);
  report.baseline_confusion = confusion(report.records, Phase::kBaseline);
  report.perturbed_confusion = confusion(report.records, Phase::kPerturbed);
  report.unattackable = static_cast<std::size_t>(
      std::count_if(report.records.begin(), report.records.end(), [](const SampleRecord& r) {
        return r.transition == Transition::kUnattackable;
      }));
  return run;
}

StabilityReport summarize_trials(std::string input_id, std::span<const Verdict> trials) {
  StabilityReport report;
  report.input_id = std::move(input_id);
  report.n_trials = trials.size();
  for (Verdict v : trials) ++report.responses[static_cast<std::size_t>(v)];
  if (!trials.empty()) {
    const std::size_t modal = *std::max_element(report.responses.begin(), report.responses.end());
    report.disagreement_rate =
        1.0 - static_cast<double>(modal) / static_cast<double>(trials.size());
  }
  report.all_invalid =
      !trials.empty() && report.responses[static_cast<std::size_t>(Verdict::kInvalid)] ==
                             trials.size();
  return report;
}

StabilityReport stability_probe(const Review& review, const PromptTemplate& prompt,
                                Classifier& classifier, std::size_t n_trials) {
  if (n_trials < 2) {
    throw Error(ErrorCode::kInvalidArgument, "stability probe needs at least 2 trials");
  }
  const ClassificationRequest request{render(prompt, review.text), review.text};
  std::vector<Verdict> trials;
  trials.reserve(n_trials);
  for (std::size_t i = 0; i < n_trials; ++i) {
    try {
      trials.push_back(to_verdict(classifier.classify(request, /*use_cache=*/false).predicted));
    } catch (const Error&) {
      trials.push_back(Verdict::kInvalid);
    }
  }
  return summarize_trials(review.id, trials);
}

bool DriftSummary::is_zero() const {
  return changes.empty() && sentiqa::is_zero(baseline) &&
         (!perturbed || sentiqa::is_zero(*perturbed));
}

DriftSummary compare_runs(const EvalReport& a, const EvalReport& b) {
  if (a.metadata.template_name != b.metadata.template_name) {
    throw Error(ErrorCode::kMismatch, "reports use different templates ('" +
                                          a.metadata.template_name + "' vs '" +
                                          b.metadata.template_name + "')");
  }
  std::map<std::string_view, const SampleRecord*> by_id;
  for (const SampleRecord& r : b.records) by_id.emplace(r.id, &r);
  if (by_id.size() != b.records.size() || a.records.size() != b.records.size()) {
    throw Error(ErrorCode::kMismatch, "reports cover different review ids");
  }
  std::vector<SampleRecord> b_aligned;
  b_aligned.reserve(a.records.size());
  for (const SampleRecord& r : a.records) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kMismatch, "review '" + r.id + "' missing from second report");
    }
    if (it->second->gold != r.gold) {
      throw Error(ErrorCode::kMismatch, "review '" + r.id + "' has different gold labels");
    }
    b_aligned.push_back(*it->second);
  }
  if (a.records.empty()) throw Error(ErrorCode::kEmptyInput, "reports have no records");

  DriftSummary drift;
  drift.baseline = phase_drift(a.records, b_aligned, Phase::kBaseline);
  const bool both_attacked = !a.metadata.attack.empty() && a.metadata.attack == b.metadata.attack &&
                             a.pert_acc.has_value() && b.pert_acc.has_value();
  if (both_attacked) drift.perturbed = phase_drift(a.records, b_aligned, Phase::kPerturbed);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const SampleRecord& ra = a.records[i];
    const SampleRecord& rb = b_aligned[i];
    if (ra.baseline != rb.baseline) {
      drift.changes.push_back({ra.id, Phase::kBaseline, ra.baseline, rb.baseline});
    }
    if (both_attacked) {
      const Verdict va = phase_verdict(ra, Phase::kPerturbed);
      const Verdict vb = phase_verdict(rb, Phase::kPerturbed);
      if (va != vb) drift.changes.push_back({ra.id, Phase::kPerturbed, va, vb});
    }
  }
  return drift;
}

}  // namespace sentiqa
