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

#ifndef SENTIQA_REPORT_H_
#define SENTIQA_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "sentiqa/eval.h"

// Persistence and text rendering for evaluation results. JSON output is a
// pure function of its input (no clocks, no latencies), so identical runs
// produce byte-identical files.
namespace sentiqa {

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(std::string_view json);
EvalReport load_report(const std::filesystem::path& path);

// One JSON object per record per line.
std::string records_to_jsonl(const EvalReport& report);

// Metrics row under the column names ori_acc, pert_acc, delta_diff, ASR,
// followed by the confusion matrices.
std::string render_report_table(const EvalReport& report);
std::string render_confusion(const ConfusionMatrix& m);

std::string stability_to_json(const StabilityReport& report);
std::string drift_to_json(const DriftSummary& drift);
std::string render_drift(const DriftSummary& drift);

// Writes to a sibling temporary file, then renames over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace sentiqa

#endif  // SENTIQA_REPORT_H_
