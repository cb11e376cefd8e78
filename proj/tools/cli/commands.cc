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

#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sentiqa/cache.h"
#include "sentiqa/client.h"
#include "sentiqa/corpus.h"
#include "sentiqa/error.h"
#include "sentiqa/eval.h"
#include "sentiqa/lexicon.h"
#include "sentiqa/perturb.h"
#include "sentiqa/prompt.h"
#include "sentiqa/report.h"
#include "sentiqa/resources.h"
#include "sentiqa/rng.h"

namespace sentiqa::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

class ExitError : public std::runtime_error {
 public:
  ExitError(int status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kResource:
    case ErrorCode::kTemplate:
      return kExitConfigError;
    case ErrorCode::kTransport:
      return kExitTransportCollapse;
    default:
      return kExitDataError;
  }
}

// Runs `fn`, rethrowing any library error with the given exit status.
template <typename Fn>
auto with_status(int status, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw ExitError(status, e.what());
  }
}

struct CorpusArgs {
  std::string path;
  std::string format = "custom";
  std::size_t sample = 0;
};

struct RunArgs {
  CorpusArgs corpus;
  std::string template_ref = "zero_shot";
  std::string backend = "mock";
  ClassifierConfig client;
  double timeout_seconds = 30.0;
  std::vector<std::string> kinds;
  std::uint64_t seed = 0;
  std::size_t concurrency = 1;
  std::string cache_path;
  std::string out_dir = "runs";
  std::string resources_dir;
  std::string lexicon_path;
  std::size_t homoglyph_letters = 0;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& args) {
  cmd->add_option("--corpus", args.path, "Corpus TSV file")->required();
  cmd->add_option("--format", args.format, "Corpus format: amazon, sst or custom")
      ->capture_default_str();
  cmd->add_option("--sample", args.sample, "Evaluate a seeded random subset of this size");
}

void add_run_options(CLI::App* cmd, RunArgs& args) {
  add_corpus_options(cmd, args.corpus);
  cmd->add_option("--template", args.template_ref, "Builtin template name or template JSON file")
      ->capture_default_str();
  cmd->add_option("--backend", args.backend, "Classifier backend: remote or mock")
      ->check(CLI::IsMember({"remote", "mock"}))
      ->capture_default_str();
  cmd->add_option("--model", args.client.model_id, "Model id")->capture_default_str();
  cmd->add_option("--temperature", args.client.temperature, "Sampling temperature")
      ->capture_default_str();
  cmd->add_option("--endpoint", args.client.endpoint_url, "Chat completion endpoint URL")
      ->capture_default_str();
  cmd->add_option("--auth-header", args.client.auth_header, "Header carrying the API key")
      ->capture_default_str();
  cmd->add_option("--api-key-env", args.client.api_key_env,
                  "Environment variable holding the API key")
      ->capture_default_str();
  cmd->add_option("--rate-limit", args.client.rate_limit, "Remote requests per second")
      ->capture_default_str();
  cmd->add_option("--max-retries", args.client.max_retries, "Retries for transient failures")
      ->capture_default_str();
  cmd->add_option("--timeout", args.timeout_seconds, "Request timeout in seconds")
      ->capture_default_str();
  cmd->add_option("--seed", args.seed, "Seed for every random choice")->capture_default_str();
  cmd->add_option("--concurrency", args.concurrency, "Maximum requests in flight")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--cache", args.cache_path, "Response cache file (JSONL)");
  cmd->add_option("--out", args.out_dir, "Directory receiving run subdirectories")
      ->capture_default_str();
  cmd->add_option("--lexicon", args.lexicon_path, "Valence lexicon TSV");
  cmd->add_option("--resources", args.resources_dir,
                  "Directory with homoglyph, synonym and homophone tables");
}

fs::path resource_dir(const RunArgs& args) {
  if (!args.resources_dir.empty()) return args.resources_dir;
  return with_status(kExitConfigError, [] { return bundled_resource_dir(); });
}

std::vector<Review> load_reviews(const CorpusArgs& args, std::uint64_t seed) {
  const CorpusFormat format =
      with_status(kExitConfigError, [&] { return parse_format(args.format); });
  std::vector<Review> reviews =
      with_status(kExitDataError, [&] { return load_corpus(args.path, format); });
  if (args.sample > 0 && args.sample < reviews.size()) {
    reviews = sample_subset(reviews, args.sample, derive_seed(seed, "sample"));
  }
  return reviews;
}

PromptTemplate resolve_template(const std::string& ref) {
  return with_status(kExitConfigError, [&] {
    if (fs::is_regular_file(ref)) return load_template(ref);
    return builtin_template(ref);
  });
}

struct Pipeline {
  std::vector<Review> corpus;
  PromptTemplate prompt;
  std::shared_ptr<const ValenceLexicon> lexicon;
  std::shared_ptr<ResponseCache> cache;
  std::unique_ptr<Classifier> classifier;
};

Pipeline make_pipeline(RunArgs& args) {
  Pipeline p;
  p.prompt = resolve_template(args.template_ref);
  args.client.timeout = std::chrono::milliseconds(
      static_cast<std::int64_t>(args.timeout_seconds * 1000.0));
  args.client.jitter_seed = derive_seed(args.seed, "backoff-jitter");
  with_status(kExitConfigError, [&] { args.client.validate(); });

  const fs::path lexicon_path =
      args.lexicon_path.empty() ? resource_dir(args) / kLexiconFile : fs::path(args.lexicon_path);
  p.lexicon = with_status(kExitConfigError, [&] {
    return std::make_shared<const ValenceLexicon>(ValenceLexicon::load(lexicon_path));
  });

  std::shared_ptr<ClassifierBackend> backend;
  if (args.backend == "remote") {
    const char* key = std::getenv(args.client.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw ExitError(kExitConfigError,
                      "remote backend needs the API key in $" + args.client.api_key_env);
    }
    backend = std::make_shared<RemoteBackend>();
  } else {
    backend = std::make_shared<MockBackend>(p.lexicon);
  }

  p.cache = with_status(kExitConfigError, [&] {
    return args.cache_path.empty() ? std::make_shared<ResponseCache>()
                                   : std::make_shared<ResponseCache>(fs::path(args.cache_path));
  });
  p.classifier = std::make_unique<Classifier>(backend, args.client, p.cache);
  p.corpus = load_reviews(args.corpus, args.seed);
  return p;
}

json config_json(const RunArgs& args, std::string_view command) {
  json kinds = json::array();
  for (const std::string& k : args.kinds) kinds.push_back(k);
  return {{"command", command},
          {"corpus", args.corpus.path},
          {"format", args.corpus.format},
          {"sample", args.corpus.sample},
          {"template", args.template_ref},
          {"backend", args.backend},
          {"model_id", args.client.model_id},
          {"temperature", args.client.temperature},
          {"endpoint", args.backend == "remote" ? args.client.endpoint_url : ""},
          {"api_key_env", args.backend == "remote" ? args.client.api_key_env : ""},
          {"kinds", kinds},
          {"seed", args.seed},
          {"lexicon", args.lexicon_path},
          {"resources", args.resources_dir},
          {"homoglyph_letters", args.homoglyph_letters}};
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string compact_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

class RunDirectory {
 public:
  RunDirectory(const std::string& out_dir, json config)
      : config_(std::move(config)), started_(std::chrono::system_clock::now()) {
    digest_ = hex64(fnv1a64(config_.dump()));
    const std::string base = compact_timestamp(started_) + "-" + digest_;
    try {
      fs::create_directories(out_dir);
      path_ = fs::path(out_dir) / base;
      for (int n = 1; !fs::create_directory(path_); ++n) {
        path_ = fs::path(out_dir) / (base + "-" + std::to_string(n));
      }
    } catch (const fs::filesystem_error& e) {
      throw ExitError(kExitConfigError, std::string("cannot create run directory: ") + e.what());
    }
  }

  void write(const std::string& name, std::string_view content) {
    with_status(kExitDataError, [&] { write_file_atomic(path_ / name, content); });
    files_.push_back(name);
  }

  void finish(const json& extra) {
    json manifest = {{"created_at", iso8601_utc(started_)},
                     {"finished_at", iso8601_utc(std::chrono::system_clock::now())},
                     {"digest", digest_},
                     {"config", config_}};
    for (const auto& [k, v] : extra.items()) manifest[k] = v;
    manifest["files"] = files_;
    write("manifest.json", manifest.dump(2) + "\n");
  }

  const fs::path& path() const { return path_; }

 private:
  json config_;
  std::chrono::system_clock::time_point started_;
  std::string digest_;
  fs::path path_;
  std::vector<std::string> files_;
};

RunMetadata metadata_for(const RunArgs& args, const Pipeline& p) {
  return RunMetadata{fs::path(args.corpus.path).filename().string(),
                     p.prompt.name,
                     args.backend,
                     args.client.model_id,
                     args.client.temperature,
                     "",
                     args.seed};
}

void write_report(RunDirectory& dir, const std::string& stem, const EvalReport& report) {
  dir.write("report-" + stem + ".json", report_to_json(report));
  dir.write("report-" + stem + ".txt", render_report_table(report));
  dir.write("records-" + stem + ".jsonl", records_to_jsonl(report));
}

std::string format_fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int cmd_stats(const CorpusArgs& args, const std::string& histogram_path, std::uint64_t seed,
              std::ostream& out) {
  const std::vector<Review> reviews = load_reviews(args, seed);
  const CorpusStats stats = compute_stats(reviews);
  const std::string name = fs::path(args.path).filename().string();
  const std::size_t width = std::max<std::size_t>(name.size(), 7) + 2;
  out << std::string("Dataset").append(width - 7, ' ') << "No. of samples  "
      << "Distribution (POSITIVE/NEUTRAL/NEGATIVE)  Avg. text length\n";
  std::string dist = format_fixed(stats.distribution[0]) + "/" +
                     format_fixed(stats.distribution[1]) + "/" +
                     format_fixed(stats.distribution[2]);
  std::string count = std::to_string(stats.n_samples);
  out << name << std::string(width - name.size(), ' ') << count
      << std::string(16 - std::min<std::size_t>(count.size(), 15), ' ') << dist
      << std::string(42 - std::min<std::size_t>(dist.size(), 41), ' ')
      << format_fixed(stats.avg_text_length, 2) << '\n';
  if (!histogram_path.empty()) {
    std::string data;
    for (const auto& [length, n] : length_histogram(reviews)) {
      data += std::to_string(length) + "\t" + std::to_string(n) + "\n";
    }
    with_status(kExitDataError, [&] { write_file_atomic(histogram_path, data); });
    out << "histogram written to " << histogram_path << '\n';
  }
  return kExitOk;
}

bool collapsed(std::size_t failures, std::size_t total) { return total > 0 && failures == total; }

int cmd_baseline(RunArgs& args, std::ostream& out, std::ostream& err) {
  Pipeline p = make_pipeline(args);
  RunDirectory dir(args.out_dir, config_json(args, "baseline"));
  const BaselineRun baseline =
      run_baseline(p.corpus, p.prompt, *p.classifier, EvalOptions{args.concurrency});
  const EvalReport report = baseline_report(baseline, metadata_for(args, p));
  write_report(dir, "baseline", report);
  dir.finish({{"backend_calls", p.classifier->backend_calls()},
              {"transport_failures", baseline.transport_failures}});
  out << render_report_table(report) << "\nrun directory: " << dir.path().string() << '\n';
  if (collapsed(baseline.transport_failures, p.corpus.size())) {
    err << "every sample failed on transport\n";
    return kExitTransportCollapse;
  }
  return kExitOk;
}

int cmd_attack(RunArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<AttackSpec> attacks;
  for (const std::string& k : args.kinds) {
    attacks.push_back(with_status(kExitConfigError, [&] { return AttackSpec::parse(k); }));
  }
  const fs::path resources_path = resource_dir(args);
  AttackResources resources =
      with_status(kExitConfigError, [&] { return AttackResources::load(resources_path); });
  resources.homoglyph_letters = args.homoglyph_letters;

  Pipeline p = make_pipeline(args);
  RunDirectory dir(args.out_dir, config_json(args, "attack"));
  const EvalOptions options{args.concurrency};
  const RunMetadata metadata = metadata_for(args, p);
  const WordScorer scorer = valence_importance(*p.lexicon);

  const BaselineRun baseline = run_baseline(p.corpus, p.prompt, *p.classifier, options);
  write_report(dir, "baseline", baseline_report(baseline, metadata));
  if (collapsed(baseline.transport_failures, p.corpus.size())) {
    dir.finish({{"backend_calls", p.classifier->backend_calls()},
                {"transport_failures", baseline.transport_failures}});
    err << "every baseline sample failed on transport\n";
    return kExitTransportCollapse;
  }

  json failures = json::object();
  failures["baseline"] = baseline.transport_failures;
  int status = kExitOk;
  for (const AttackSpec& attack : attacks) {
    const AttackRun run = with_status(kExitConfigError, [&] {
      return run_attack(p.corpus, baseline, attack, scorer, resources, p.prompt, *p.classifier,
                        args.seed, metadata, options);
    });
    write_report(dir, attack.name, run.report);
    failures[attack.name] = run.transport_failures;
    out << render_report_table(run.report) << '\n';
    if (collapsed(run.transport_failures, p.corpus.size())) {
      err << "every " << attack.name << " sample failed on transport\n";
      status = kExitTransportCollapse;
    }
  }
  dir.finish({{"backend_calls", p.classifier->backend_calls()},
              {"transport_failures", failures}});
  out << "run directory: " << dir.path().string() << '\n';
  return status;
}

int cmd_stability(RunArgs& args, const std::string& id, std::size_t trials, std::ostream& out) {
  Pipeline p = make_pipeline(args);
  const auto it = std::find_if(p.corpus.begin(), p.corpus.end(),
                               [&](const Review& r) { return r.id == id; });
  if (it == p.corpus.end()) throw ExitError(kExitConfigError, "no review with id '" + id + "'");
  const StabilityReport report = with_status(
      kExitConfigError, [&] { return stability_probe(*it, p.prompt, *p.classifier, trials); });

  RunDirectory dir(args.out_dir, config_json(args, "stability"));
  dir.write("stability-" + hex64(fnv1a64(id)) + ".json", stability_to_json(report));
  dir.finish({{"review_id", id}, {"backend_calls", p.classifier->backend_calls()}});

  out << "review " << report.input_id << ": " << report.n_trials << " trials";
  for (Verdict v : {Verdict::kPositive, Verdict::kNeutral, Verdict::kNegative, Verdict::kInvalid}) {
    out << "  " << verdict_name(v) << '=' << report.responses[static_cast<std::size_t>(v)];
  }
  out << "\ndisagreement_rate: " << format_fixed(report.disagreement_rate) << '\n';
  if (report.all_invalid) out << "warning: every trial was INVALID\n";
  out << "run directory: " << dir.path().string() << '\n';
  return kExitOk;
}

EvalReport load_report_arg(const std::string& ref, const std::string& attack) {
  fs::path path = ref;
  if (fs::is_directory(path)) path /= "report-" + attack + ".json";
  return with_status(kExitDataError, [&] { return load_report(path); });
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& attack,
                const std::string& json_out, std::ostream& out) {
  const EvalReport ra = load_report_arg(a, attack);
  const EvalReport rb = load_report_arg(b, attack);
  const DriftSummary drift = with_status(kExitDataError, [&] { return compare_runs(ra, rb); });
  out << render_drift(drift);
  if (!json_out.empty()) {
    with_status(kExitDataError, [&] { write_file_atomic(json_out, drift_to_json(drift)); });
  }
  return kExitOk;
}

ResponseCache open_existing_cache(const std::string& path) {
  if (!fs::exists(path)) throw ExitError(kExitDataError, "cache file " + path + " does not exist");
  return with_status(kExitDataError, [&] { return ResponseCache(fs::path(path)); });
}

int cmd_cache_inspect(const std::string& path, bool list, std::ostream& out) {
  const ResponseCache cache = open_existing_cache(path);
  const std::vector<CacheEntry> entries = cache.entries();
  out << "entries: " << entries.size() << "  distinct keys: " << cache.distinct_keys() << '\n';
  std::map<std::pair<std::string, double>, std::size_t> per_model;
  for (const CacheEntry& e : entries) ++per_model[{e.model_id, e.temperature}];
  for (const auto& [model, n] : per_model) {
    out << "  model " << model.first << " temperature " << model.second << ": " << n << '\n';
  }
  if (list) {
    for (const CacheEntry& e : entries) {
      out << e.key << '\t' << e.model_id << '\t' << e.temperature << '\t' << e.timestamp << '\n';
    }
  }
  return kExitOk;
}

int cmd_cache_evict(const std::string& path, const std::string& model, const std::string& key,
                    bool all, std::ostream& out) {
  if (!all && model.empty() && key.empty()) {
    throw ExitError(kExitConfigError, "evict needs --model, --key or --all");
  }
  ResponseCache cache = open_existing_cache(path);
  const std::size_t removed = with_status(kExitDataError, [&] {
    return cache.evict([&](const CacheEntry& e) {
      if (all) return true;
      return (model.empty() || e.model_id == model) && (key.empty() || e.key == key);
    });
  });
  out << "evicted " << removed << " entr" << (removed == 1 ? "y" : "ies") << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adversarial robustness harness for LLM sentiment classifiers", "sentiqa"};
  app.require_subcommand(1);

  CorpusArgs stats_args;
  std::string histogram;
  std::uint64_t stats_seed = 0;
  CLI::App* stats = app.add_subcommand("stats", "Print corpus statistics");
  add_corpus_options(stats, stats_args);
  stats->add_option("--histogram", histogram, "Write (length, count) pairs to this file");
  stats->add_option("--seed", stats_seed, "Seed for --sample")->capture_default_str();

  RunArgs baseline_args;
  CLI::App* baseline = app.add_subcommand("baseline", "Classify the unperturbed corpus");
  add_run_options(baseline, baseline_args);

  RunArgs attack_args;
  CLI::App* attack = app.add_subcommand("attack", "Baseline plus one-word adversarial attacks");
  add_run_options(attack, attack_args);
  attack->add_option("--kind", attack_args.kinds,
                     "typo, typo-swap, typo-substitute, typo-delete, typo-insert, synonym, "
                     "homoglyph or homophone (repeatable)")
      ->required();
  attack->add_option("--homoglyph-chars", attack_args.homoglyph_letters,
                     "Letters replaced by a homoglyph attack (0 = whole word)")
      ->capture_default_str();

  RunArgs stability_args;
  std::string stability_id;
  std::size_t trials = 10;
  CLI::App* stability = app.add_subcommand("stability", "Repeat one classification");
  add_run_options(stability, stability_args);
  stability->add_option("--id", stability_id, "Review id")->required();
  stability->add_option("--trials", trials, "Number of trials")->capture_default_str();

  std::string compare_a;
  std::string compare_b;
  std::string compare_attack = "baseline";
  std::string compare_json;
  CLI::App* compare = app.add_subcommand("compare", "Compare two stored reports");
  compare->add_option("report_a", compare_a, "Report file or run directory")->required();
  compare->add_option("report_b", compare_b, "Report file or run directory")->required();
  compare->add_option("--attack", compare_attack, "Report picked from run directories")
      ->capture_default_str();
  compare->add_option("--json", compare_json, "Also write the drift summary as JSON");

  CLI::App* cache = app.add_subcommand("cache", "Inspect or evict cached responses");
  cache->require_subcommand(1);
  std::string cache_path;
  bool cache_list = false;
  CLI::App* inspect = cache->add_subcommand("inspect", "Summarize a cache file");
  inspect->add_option("--cache", cache_path, "Cache file")->required();
  inspect->add_flag("--list", cache_list, "List every entry");
  std::string evict_model;
  std::string evict_key;
  bool evict_all = false;
  CLI::App* evict = cache->add_subcommand("evict", "Remove cached responses");
  evict->add_option("--cache", cache_path, "Cache file")->required();
  evict->add_option("--model", evict_model, "Evict entries for this model");
  evict->add_option("--key", evict_key, "Evict this key");
  evict->add_flag("--all", evict_all, "Evict everything");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*stats) return cmd_stats(stats_args, histogram, stats_seed, out);
    if (*baseline) return cmd_baseline(baseline_args, out, err);
    if (*attack) return cmd_attack(attack_args, out, err);
    if (*stability) return cmd_stability(stability_args, stability_id, trials, out);
    if (*compare) return cmd_compare(compare_a, compare_b, compare_attack, compare_json, out);
    if (*inspect) return cmd_cache_inspect(cache_path, cache_list, out);
    if (*evict) return cmd_cache_evict(cache_path, evict_model, evict_key, evict_all, out);
  } catch (const ExitError& e) {
    err << "error: " << e.what() << '\n';
    return e.status();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return status_for(e.code());
  }
  return kExitConfigError;
}

}  // namespace sentiqa::cli
