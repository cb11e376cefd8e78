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

#ifndef SENTIQA_CLIENT_H_
#define SENTIQA_CLIENT_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "sentiqa/cache.h"
#include "sentiqa/labels.h"
#include "sentiqa/lexicon.h"
#include "sentiqa/prompt.h"
#include "sentiqa/rate_limiter.h"
#include "sentiqa/rng.h"

namespace sentiqa {

struct ClassifierConfig {
  // Full chat-completion URL: scheme, host, optional port, path.
  std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
  // With "Authorization" the key is sent as "Bearer <key>"; any other header
  // name carries the bare key.
  std::string auth_header = "Authorization";
  std::string model_id = "gpt-3.5-turbo";
  double temperature = 0.0;
  std::chrono::milliseconds timeout{30000};
  std::size_t max_retries = 3;
  // Requests per second across all callers (remote backends only).
  double rate_limit = 3.0;
  std::string api_key_env = "OPENAI_API_KEY";
  // Retry delay: initial_backoff * multiplier^attempt, scaled by a uniform
  // factor in [1 - jitter, 1 + jitter].
  std::chrono::milliseconds initial_backoff{1000};
  double backoff_multiplier = 2.0;
  double backoff_jitter = 0.2;
  std::uint64_t jitter_seed = 0;

  // Throws Error(kConfig).
  void validate() const;
};

// What a backend sees: the rendered prompt, plus the bare review text for
// backends (like the mock) that score the text directly.
struct ClassificationRequest {
  RenderedPrompt prompt;
  std::string review_text;
};

struct ClassificationResult {
  SentimentLabel predicted = SentimentLabel::kNeutral;
  std::string raw_response;
  std::chrono::microseconds latency{0};
  bool from_cache = false;
  std::string model_id;
  double temperature = 0.0;
};

// A source of raw responses. Implementations must be safe to call from
// several threads; transient failures are reported as TransportError with
// retryable() == true.
class ClassifierBackend {
 public:
  virtual ~ClassifierBackend() = default;

  virtual std::string query(const ClassificationRequest& request,
                            const ClassifierConfig& config) = 0;
  virtual std::string name() const = 0;
  // Remote backends are paced by the rate limiter.
  virtual bool is_remote() const { return false; }
};

inline constexpr double kMockPositiveThreshold = 0.5;
inline constexpr double kMockNegativeThreshold = -0.5;

// s = valence_sum(text): s > +0.5 → POSITIVE, s < -0.5 → NEGATIVE, else NEUTRAL.
SentimentLabel mock_classify(std::string_view review_text, const ValenceLexicon& lexicon);

// Offline deterministic backend; answers with the bare label word.
class MockBackend final : public ClassifierBackend {
 public:
  explicit MockBackend(std::shared_ptr<const ValenceLexicon> lexicon);

  std::string query(const ClassificationRequest& request, const ClassifierConfig& config) override;
  std::string name() const override { return "mock"; }

 private:
  std::shared_ptr<const ValenceLexicon> lexicon_;
};

// Chat-completion endpoint over HTTP(S). Request body:
//   {"model", "temperature", "messages": [{"role": "system", ...},
//                                         {"role": "user", ...}]}
// raw response = choices[0].message.content. HTTP 429/5xx and connection
// failures are retryable; other statuses are not. The API key is read from
// the environment on every call and never logged.
class RemoteBackend final : public ClassifierBackend {
 public:
  std::string query(const ClassificationRequest& request, const ClassifierConfig& config) override;
  std::string name() const override { return "remote"; }
  bool is_remote() const override { return true; }
};

// Whole-word, case-insensitive scan for POSITIVE / NEUTRAL / NEGATIVE.
// One distinct label → that label. Several → the first one, if it occurs
// among the first three words; otherwise LabelParseError(kAmbiguousLabel).
// None → LabelParseError(kNoLabel).
SentimentLabel parse_label(std::string_view raw);

// Front door for every classification: cache, rate limiting, retries with
// exponential backoff, and label parsing.
class Classifier {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  Classifier(std::shared_ptr<ClassifierBackend> backend, ClassifierConfig config,
             std::shared_ptr<ResponseCache> cache = nullptr);

  // Throws TransportError after retries are exhausted and LabelParseError
  // when the response has no usable label. With use_cache == false the
  // cache is neither read nor written.
  ClassificationResult classify(const ClassificationRequest& request, bool use_cache = true);

  // Replaces std::this_thread::sleep_for between retries.
  void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }

  std::size_t backend_calls() const { return backend_calls_.load(); }
  const ClassifierConfig& config() const { return config_; }
  const ClassifierBackend& backend() const { return *backend_; }
  const std::shared_ptr<ResponseCache>& cache() const { return cache_; }

 private:
  std::string query_with_retries(const ClassificationRequest& request);
  std::chrono::milliseconds backoff(std::size_t attempt);

  std::shared_ptr<ClassifierBackend> backend_;
  ClassifierConfig config_;
  std::shared_ptr<ResponseCache> cache_;
  std::unique_ptr<RateLimiter> limiter_;
  Sleeper sleeper_;
  std::mutex jitter_mu_;
  Rng jitter_rng_;
  std::atomic<std::size_t> backend_calls_{0};
};

}  // namespace sentiqa

#endif  // SENTIQA_CLIENT_H_
