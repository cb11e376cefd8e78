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

#include "sentiqa/client.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "sentiqa/error.h"
#include "sentiqa/text.h"

namespace sentiqa {
namespace {

constexpr std::size_t kLeadingWords = 3;

}  // namespace

void ClassifierConfig::validate() const {
  if (!std::isfinite(temperature) || temperature < 0.0) {
    throw Error(ErrorCode::kConfig, "temperature must be >= 0");
  }
  if (!std::isfinite(rate_limit) || rate_limit <= 0.0) {
    throw Error(ErrorCode::kConfig, "rate limit must be > 0");
  }
  if (timeout.count() <= 0) throw Error(ErrorCode::kConfig, "timeout must be positive");
  if (backoff_multiplier < 1.0 || backoff_jitter < 0.0 || backoff_jitter >= 1.0) {
    throw Error(ErrorCode::kConfig, "invalid backoff schedule");
  }
  if (model_id.empty()) throw Error(ErrorCode::kConfig, "model id is empty");
}

SentimentLabel mock_classify(std::string_view review_text, const ValenceLexicon& lexicon) {
  const double s = valence_sum(review_text, lexicon);
  if (s > kMockPositiveThreshold) return SentimentLabel::kPositive;
  if (s < kMockNegativeThreshold) return SentimentLabel::kNegative;
  return SentimentLabel::kNeutral;
}

MockBackend::MockBackend(std::shared_ptr<const ValenceLexicon> lexicon)
    : lexicon_(std::move(lexicon)) {
  if (!lexicon_) throw Error(ErrorCode::kConfig, "mock backend needs a lexicon");
}

std::string MockBackend::query(const ClassificationRequest& request, const ClassifierConfig&) {
  return std::string(label_name(mock_classify(request.review_text, *lexicon_)));
}

SentimentLabel parse_label(std::string_view raw) {
  struct Hit {
    SentimentLabel label;
    std::size_t word_index;
  };
  std::vector<Hit> hits;
  std::size_t word_index = 0;
  for (const Token& t : tokenize(raw)) {
    if (t.kind != TokenKind::kWord) continue;
    if (auto label = label_from_name(text::to_upper(t.text))) hits.push_back({*label, word_index});
    ++word_index;
  }
  if (hits.empty()) {
    throw LabelParseError(ErrorCode::kNoLabel, std::string(raw), "response names no label");
  }
  const Hit& first = hits.front();
  const bool single = std::all_of(hits.begin(), hits.end(),
                                  [&](const Hit& h) { return h.label == first.label; });
  if (single || first.word_index < kLeadingWords) return first.label;
  throw LabelParseError(ErrorCode::kAmbiguousLabel, std::string(raw),
                        "response names several labels");
}

Classifier::Classifier(std::shared_ptr<ClassifierBackend> backend, ClassifierConfig config,
                       std::shared_ptr<ResponseCache> cache)
    : backend_(std::move(backend)),
      config_(std::move(config)),
      cache_(std::move(cache)),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }),
      jitter_rng_(config_.jitter_seed) {
  if (!backend_) throw Error(ErrorCode::kConfig, "classifier needs a backend");
  config_.validate();
  if (backend_->is_remote()) limiter_ = std::make_unique<RateLimiter>(config_.rate_limit);
}

std::chrono::milliseconds Classifier::backoff(std::size_t attempt) {
  double factor = 1.0;
  {
    std::lock_guard lock(jitter_mu_);
    factor += config_.backoff_jitter * (2.0 * jitter_rng_.uniform_real() - 1.0);
  }
  const double base = static_cast<double>(config_.initial_backoff.count()) *
                      std::pow(config_.backoff_multiplier, static_cast<double>(attempt));
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(base * factor)));
}

std::string Classifier::query_with_retries(const ClassificationRequest& request) {
  for (std::size_t attempt = 0;; ++attempt) {
    if (limiter_) limiter_->acquire();
    try {
      ++backend_calls_;
      return backend_->query(request, config_);
    } catch (const TransportError& e) {
      if (!e.retryable() || attempt >= config_.max_retries) {
        throw TransportError(std::string(e.what()) + " (after " + std::to_string(attempt + 1) +
                                 " attempt(s))",
                             false);
      }
    }
    sleeper_(backoff(attempt));
  }
}

ClassificationResult Classifier::classify(const ClassificationRequest& request, bool use_cache) {
  const auto start = std::chrono::steady_clock::now();
  ClassificationResult result;
  result.model_id = config_.model_id;
  result.temperature = config_.temperature;

  const bool cached = use_cache && cache_ != nullptr;
  std::string key;
  if (cached) {
    key = cache_key(config_.model_id, config_.temperature, request.prompt.system,
                    request.prompt.user);
    if (auto hit = cache_->lookup(key)) {
      result.raw_response = std::move(*hit);
      result.from_cache = true;
    }
  }
  if (!result.from_cache) {
    result.raw_response = query_with_retries(request);
    if (cached) {
      cache_->store(CacheEntry{key, config_.model_id, config_.temperature, result.raw_response,
                               iso8601_utc(std::chrono::system_clock::now())});
    }
  }
  result.latency = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  result.predicted = parse_label(result.raw_response);
  return result;
}

}  // namespace sentiqa
