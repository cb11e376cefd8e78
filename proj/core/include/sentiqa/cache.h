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

#ifndef SENTIQA_CACHE_H_
#define SENTIQA_CACHE_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sentiqa {

struct CacheEntry {
  std::string key;
  std::string model_id;
  double temperature = 0.0;
  std::string raw_response;
  std::string timestamp;  // ISO 8601, UTC

  bool operator==(const CacheEntry&) const = default;
};

// Hex SHA-256 over the length-prefixed fields. Temperature is rendered with
// %.17g so equal doubles always produce the same key.
std::string cache_key(std::string_view model_id, double temperature, std::string_view system,
                      std::string_view user);

std::string iso8601_utc(std::chrono::system_clock::time_point t);

// Response log keyed by cache_key(). File-backed caches are append-only JSON
// lines; a key may appear several times and the latest record is served.
class ResponseCache {
 public:
  // In-memory only.
  ResponseCache() = default;
  // Loads the log at path (if present) and appends new entries to it. A
  // final line without a newline (an interrupted append) is ignored.
  explicit ResponseCache(std::filesystem::path path);

  std::optional<std::string> lookup(const std::string& key) const;
  void store(CacheEntry entry);

  // Every record in log order.
  std::vector<CacheEntry> entries() const;
  std::size_t distinct_keys() const;

  // Drops every record matching predicate and rewrites the log. Returns
  // the number of records removed.
  std::size_t evict(const std::function<bool(const CacheEntry&)>& predicate);

  const std::optional<std::filesystem::path>& path() const { return path_; }

 private:
  void rebuild_index();

  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mu_;
  std::vector<CacheEntry> log_;
  std::unordered_map<std::string, std::size_t> latest_;
};

}  // namespace sentiqa

#endif  // SENTIQA_CACHE_H_
