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

#include "sentiqa/report.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sentiqa/error.h"
#include "sentiqa/rng.h"
#include "sentiqa/text.h"

namespace sentiqa {
namespace {

using json = nlohmann::ordered_json;

json confusion_to_json(const ConfusionMatrix& m) {
  json labels = json::array();
  for (SentimentLabel l : kAllLabels) labels.push_back(std::string(label_name(l)));
  return {{"labels", labels},
          {"cells", m.cells},
          {"invalid_by_gold", m.invalid_by_gold},
          {"invalid_count", m.invalid_count()}};
}

ConfusionMatrix confusion_from_json(const json& j) {
  ConfusionMatrix m;
  m.cells = j.at("cells").get<decltype(m.cells)>();
  m.invalid_by_gold = j.at("invalid_by_gold").get<decltype(m.invalid_by_gold)>();
  return m;
}

std::string verdict_string(Verdict v) { return std::string(verdict_name(v)); }

Verdict verdict_from_json(const json& j) {
  const std::string name = j.get<std::string>();
  const auto v = verdict_from_name(name);
  if (!v) throw Error(ErrorCode::kParse, "unknown verdict '" + name + "'");
  return *v;
}

json attack_to_json(const AdversarialExample& ex) {
  return {{"original_id", ex.original_id},
          {"kind", std::string(kind_name(ex.kind))},
          {"target_token_index", ex.target_token_index},
          {"original_word", ex.original_word},
          {"perturbed_word", ex.perturbed_word},
          {"perturbed_word_nfc", text::nfc(ex.perturbed_word)},
          {"perturbed_text", ex.perturbed_text},
          {"seed", ex.seed}};
}

AdversarialExample attack_from_json(const json& j) {
  AdversarialExample ex;
  ex.original_id = j.at("original_id").get<std::string>();
  ex.kind = parse_kind(j.at("kind").get<std::string>());
  ex.target_token_index = j.at("target_token_index").get<std::size_t>();
  ex.original_word = j.at("original_word").get<std::string>();
  ex.perturbed_word = j.at("perturbed_word").get<std::string>();
  ex.perturbed_text = j.at("perturbed_text").get<std::string>();
  ex.seed = j.at("seed").get<std::uint64_t>();
  return ex;
}

json record_to_json(const SampleRecord& r) {
  json j = {{"id", r.id},
            {"gold", std::string(label_name(r.gold))},
            {"baseline", verdict_string(r.baseline)},
            {"baseline_raw", r.baseline_raw}};
  if (!r.baseline_error.empty()) j["baseline_error"] = r.baseline_error;
  if (r.transition) {
    j["transition"] = std::string(transition_name(*r.transition));
    j["perturbed"] = r.perturbed ? json(verdict_string(*r.perturbed)) : json(nullptr);
    j["perturbed_raw"] = r.perturbed_raw;
    if (!r.perturbed_error.empty()) j["perturbed_error"] = r.perturbed_error;
    j["attack"] = r.attack ? attack_to_json(*r.attack) : json(nullptr);
  }
  return j;
}

SampleRecord record_from_json(const json& j) {
  SampleRecord r;
  r.id = j.at("id").get<std::string>();
  const std::string gold = j.at("gold").get<std::string>();
  const auto label = label_from_name(gold);
  if (!label) throw Error(ErrorCode::kParse, "unknown gold label '" + gold + "'");
  r.gold = *label;
  r.baseline = verdict_from_json(j.at("baseline"));
  r.baseline_raw = j.value("baseline_raw", std::string());
  r.baseline_error = j.value("baseline_error", std::string());
  if (j.contains("transition")) {
    r.transition = parse_transition(j.at("transition").get<std::string>());
    if (!j.at("perturbed").is_null()) r.perturbed = verdict_from_json(j.at("perturbed"));
    r.perturbed_raw = j.value("perturbed_raw", std::string());
    r.perturbed_error = j.value("perturbed_error", std::string());
    if (j.contains("attack") && !j.at("attack").is_null()) r.attack = attack_from_json(j.at("attack"));
  }
  return r;
}

json metadata_to_json(const RunMetadata& m) {
  return {{"corpus", m.corpus},
          {"template", m.template_name},
          {"backend", m.backend},
          {"model_id", m.model_id},
          {"temperature", m.temperature},
          {"attack", m.attack},
          {"seed", m.seed}};
}

RunMetadata metadata_from_json(const json& j) {
  return RunMetadata{j.value("corpus", std::string()),
                     j.at("template").get<std::string>(),
                     j.value("backend", std::string()),
                     j.value("model_id", std::string()),
                     j.value("temperature", 0.0),
                     j.value("attack", std::string()),
                     j.value("seed", std::uint64_t{0})};
}

json phase_drift_to_json(const PhaseDrift& d) {
  return {{"accuracy_delta", d.accuracy_delta},
          {"per_class_accuracy_delta", d.per_class_accuracy_delta},
          {"confusion_delta", d.confusion_delta}};
}

std::string format_metric(std::optional<double> v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::string pad_left(std::string_view s, std::size_t width) {
  std::string out;
  if (s.size() < width) out.assign(width - s.size(), ' ');
  out += s;
  return out;
}

std::string pad_right(std::string_view s, std::size_t width) {
  std::string out(s);
  if (s.size() < width) out.append(width - s.size(), ' ');
  return out;
}

std::string render_phase_drift(const PhaseDrift& d) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.4f", d.accuracy_delta);
  out << "  accuracy delta: " << buf << "\n  per-class accuracy delta:";
  for (SentimentLabel l : kAllLabels) {
    std::snprintf(buf, sizeof buf, "%+.4f", d.per_class_accuracy_delta[index_of(l)]);
    out << ' ' << label_name(l) << '=' << buf;
  }
  out << "\n  confusion delta (rows gold; columns POSITIVE NEUTRAL NEGATIVE INVALID):\n";
  for (SentimentLabel l : kAllLabels) {
    out << "    " << pad_right(label_name(l), 9);
    for (long v : d.confusion_delta[index_of(l)]) {
      std::snprintf(buf, sizeof buf, "%+ld", v);
      out << pad_left(buf, 9);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  json metrics = {{"n_samples", report.records.size()}, {"ori_acc", report.ori_acc}};
  if (report.pert_acc) {
    metrics["pert_acc"] = *report.pert_acc;
    metrics["delta_diff"] = *report.delta_diff;
    metrics["asr"] = *report.asr;
    metrics["unattackable"] = report.unattackable;
  }
  json doc = {{"metadata", metadata_to_json(report.metadata)},
              {"metrics", metrics},
              {"baseline_confusion", confusion_to_json(report.baseline_confusion)}};
  if (report.perturbed_confusion) {
    doc["perturbed_confusion"] = confusion_to_json(*report.perturbed_confusion);
  }
  json records = json::array();
  for (const SampleRecord& r : report.records) records.push_back(record_to_json(r));
  doc["records"] = std::move(records);
  return doc.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    EvalReport report;
    report.metadata = metadata_from_json(doc.at("metadata"));
    const json& metrics = doc.at("metrics");
    report.ori_acc = metrics.at("ori_acc").get<double>();
    if (metrics.contains("pert_acc")) {
      report.pert_acc = metrics.at("pert_acc").get<double>();
      report.delta_diff = metrics.at("delta_diff").get<double>();
      report.asr = metrics.at("asr").get<double>();
      report.unattackable = metrics.value("unattackable", std::size_t{0});
    }
    report.baseline_confusion = confusion_from_json(doc.at("baseline_confusion"));
    if (doc.contains("perturbed_confusion")) {
      report.perturbed_confusion = confusion_from_json(doc.at("perturbed_confusion"));
    }
    for (const json& r : doc.at("records")) report.records.push_back(record_from_json(r));
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed report: ") + e.what());
  }
}

EvalReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open report " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return report_from_json(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string records_to_jsonl(const EvalReport& report) {
  std::string out;
  for (const SampleRecord& r : report.records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::string render_confusion(const ConfusionMatrix& m) {
  std::ostringstream out;
  out << pad_right("gold\\pred", 10);
  for (SentimentLabel l : kAllLabels) out << pad_left(label_name(l), 10);
  out << pad_left("INVALID", 10) << '\n';
  for (SentimentLabel gold : kAllLabels) {
    out << pad_right(label_name(gold), 10);
    for (std::size_t c : m.cells[index_of(gold)]) out << pad_left(std::to_string(c), 10);
    out << pad_left(std::to_string(m.invalid_by_gold[index_of(gold)]), 10) << '\n';
  }
  return out.str();
}

std::string render_report_table(const EvalReport& report) {
  const RunMetadata& m = report.metadata;
  std::ostringstream out;
  out << "corpus: " << m.corpus << "  template: " << m.template_name << "  backend: " << m.backend
      << "  model: " << m.model_id << "  temperature: " << m.temperature
      << "  attack: " << (m.attack.empty() ? "none" : m.attack) << "  seed: " << m.seed << "\n";
  const char* header[] = {"ori_acc", "pert_acc", "delta_diff", "ASR"};
  out << pad_right("", 10);
  for (const char* h : header) out << pad_left(h, 12);
  out << '\n' << pad_right(m.corpus.empty() ? "run" : std::filesystem::path(m.corpus).stem().string(), 10);
  for (const auto& v : {std::optional<double>(report.ori_acc), report.pert_acc, report.delta_diff,
                        report.asr}) {
    out << pad_left(format_metric(v), 12);
  }
  out << "\nsamples: " << report.records.size();
  if (report.pert_acc) out << "  unattackable: " << report.unattackable;
  out << "\n\nbaseline confusion (rows gold, columns predicted)\n"
      << render_confusion(report.baseline_confusion);
  if (report.perturbed_confusion) {
    out << "\nperturbed confusion (rows gold, columns predicted)\n"
        << render_confusion(*report.perturbed_confusion);
  }
  return out.str();
}

std::string stability_to_json(const StabilityReport& report) {
  json responses = json::object();
  for (Verdict v : {Verdict::kPositive, Verdict::kNeutral, Verdict::kNegative, Verdict::kInvalid}) {
    responses[verdict_string(v)] = report.responses[static_cast<std::size_t>(v)];
  }
  const json doc = {{"input_id", report.input_id},
                    {"n_trials", report.n_trials},
                    {"responses", responses},
                    {"disagreement_rate", report.disagreement_rate},
                    {"all_invalid", report.all_invalid}};
  return doc.dump(2) + "\n";
}

std::string drift_to_json(const DriftSummary& drift) {
  json changes = json::array();
  for (const LabelChange& c : drift.changes) {
    changes.push_back({{"id", c.id},
                       {"phase", c.phase == Phase::kBaseline ? "baseline" : "perturbed"},
                       {"before", verdict_string(c.before)},
                       {"after", verdict_string(c.after)}});
  }
  json doc = {{"zero_drift", drift.is_zero()}, {"baseline", phase_drift_to_json(drift.baseline)}};
  if (drift.perturbed) doc["perturbed"] = phase_drift_to_json(*drift.perturbed);
  doc["changes"] = std::move(changes);
  return doc.dump(2) + "\n";
}

std::string render_drift(const DriftSummary& drift) {
  if (drift.is_zero()) return "no drift\n";
  std::ostringstream out;
  out << "baseline drift\n" << render_phase_drift(drift.baseline);
  if (drift.perturbed) out << "perturbed drift\n" << render_phase_drift(*drift.perturbed);
  out << drift.changes.size() << " label change(s)\n";
  for (const LabelChange& c : drift.changes) {
    out << "  " << c.id << " [" << (c.phase == Phase::kBaseline ? "baseline" : "perturbed")
        << "] " << verdict_name(c.before) << " -> " << verdict_name(c.after) << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp =
      path.string() + ".tmp" + std::to_string(fnv1a64(path.string()) & 0xFFFF);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sentiqa
