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

#include "sentiqa/cache.h"

#include <openssl/evp.h>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sentiqa/error.h"

namespace sentiqa {
namespace {

using nlohmann::json;

void digest_field(EVP_MD_CTX* ctx, std::string_view field) {
  const std::string prefix = std::to_string(field.size()) + ":";
  EVP_DigestUpdate(ctx, prefix.data(), prefix.size());
  EVP_DigestUpdate(ctx, field.data(), field.size());
}

std::string entry_to_line(const CacheEntry& e) {
  const json doc = {{"key", e.key},
                    {"model_id", e.model_id},
                    {"temperature", e.temperature},
                    {"raw_response", e.raw_response},
                    {"timestamp", e.timestamp}};
  return doc.dump() + "\n";
}

CacheEntry entry_from_line(const std::string& line, const std::string& source,
                           std::size_t line_no) {
  try {
    const json doc = json::parse(line);
    return CacheEntry{doc.at("key").get<std::string>(), doc.at("model_id").get<std::string>(),
                      doc.at("temperature").get<double>(),
                      doc.at("raw_response").get<std::string>(),
                      doc.value("timestamp", std::string())};
  } catch (const json::exception& e) {
    throw LineError(ErrorCode::kParse, source, line_no, std::string("bad cache record: ") + e.what());
  }
}

}  // namespace

std::string cache_key(std::string_view model_id, double temperature, std::string_view system,
                      std::string_view user) {
  char temp[32];
  std::snprintf(temp, sizeof temp, "%.17g", temperature);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error(ErrorCode::kResource, "SHA-256 unavailable");
  }
  digest_field(ctx, model_id);
  digest_field(ctx, temp);
  digest_field(ctx, system);
  digest_field(ctx, user);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::string iso8601_utc(std::chrono::system_clock::time_point t) {
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(millis / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(millis % 1000));
  return buf;
}

ResponseCache::ResponseCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_, std::ios::binary);
  if (!in) return;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < content.size()) {
    const auto nl = content.find('\n', start);
    if (nl == std::string::npos) {
      // Drop the tail of an interrupted append before anything else is written.
      in.close();
      std::filesystem::resize_file(*path_, start);
      break;
    }
    ++line_no;
    const std::string line = content.substr(start, nl - start);
    start = nl + 1;
    if (line.empty()) continue;
    log_.push_back(entry_from_line(line, path_->string(), line_no));
  }
  rebuild_index();
}

void ResponseCache::rebuild_index() {
  latest_.clear();
  for (std::size_t i = 0; i < log_.size(); ++i) latest_[log_[i].key] = i;
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
  std::shared_lock lock(mu_);
  const auto it = latest_.find(key);
  if (it == latest_.end()) return std::nullopt;
  return log_[it->second].raw_response;
}

void ResponseCache::store(CacheEntry entry) {
  std::unique_lock lock(mu_);
  if (path_) {
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    out << entry_to_line(entry);
    if (!out.flush()) throw Error(ErrorCode::kIo, "cannot append to cache " + path_->string());
  }
  latest_[entry.key] = log_.size();
  log_.push_back(std::move(entry));
}

std::vector<CacheEntry> ResponseCache::entries() const {
  std::shared_lock lock(mu_);
  return log_;
}

std::size_t ResponseCache::distinct_keys() const {
  std::shared_lock lock(mu_);
  return latest_.size();
}

std::size_t ResponseCache::evict(const std::function<bool(const CacheEntry&)>& predicate) {
  std::unique_lock lock(mu_);
  std::vector<CacheEntry> kept;
  for (CacheEntry& e : log_) {
    if (!predicate(e)) kept.push_back(std::move(e));
  }
  const std::size_t removed = log_.size() - kept.size();
  log_ = std::move(kept);
  rebuild_index();
  if (path_) {
    const std::filesystem::path tmp = path_->string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      for (const CacheEntry& e : log_) out << entry_to_line(e);
      if (!out.flush()) throw Error(ErrorCode::kIo, "cannot rewrite cache " + path_->string());
    }
    std::filesystem::rename(tmp, *path_);
  }
  return removed;
}

}  // namespace sentiqa
