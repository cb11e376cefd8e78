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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "sentiqa/error.h"

namespace sentiqa {
namespace {

namespace fs = std::filesystem;

class TempFile {
 public:
  explicit TempFile(const std::string& name)
      : path_(fs::temp_directory_path() /
              (name + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
               ".jsonl")) {
    fs::remove(path_);
  }
  ~TempFile() { fs::remove(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CacheEntry entry(const std::string& model, const std::string& user, const std::string& raw) {
  return CacheEntry{cache_key(model, 0.0, "sys", user), model, 0.0, raw,
                    "2026-01-01T00:00:00.000Z"};
}

TEST(CacheKeyTest, IsSha256HexAndSeparatesFields) {
  const std::string k = cache_key("m", 0.0, "s", "u");
  EXPECT_EQ(k.size(), 64u);
  EXPECT_EQ(k.find_first_not_of("0123456789abcdef"), std::string::npos);
  EXPECT_EQ(k, cache_key("m", 0.0, "s", "u"));
  EXPECT_NE(k, cache_key("m2", 0.0, "s", "u"));
  EXPECT_NE(k, cache_key("m", 0.7, "s", "u"));
  EXPECT_NE(k, cache_key("m", 0.0, "s2", "u"));
  EXPECT_NE(k, cache_key("m", 0.0, "s", "u2"));
  // Length prefixes keep field boundaries unambiguous.
  EXPECT_NE(cache_key("m", 0.0, "ab", "c"), cache_key("m", 0.0, "a", "bc"));
}

TEST(Iso8601Test, FormatsUtcWithMillis) {
  const auto t = std::chrono::system_clock::time_point(std::chrono::milliseconds(1700000000123));
  EXPECT_EQ(iso8601_utc(t), "2023-11-14T22:13:20.123Z");
}

TEST(ResponseCacheTest, InMemoryLatestWins) {
  ResponseCache cache;
  EXPECT_EQ(cache.lookup("nope"), std::nullopt);
  cache.store(entry("m", "u", "POSITIVE"));
  cache.store(entry("m", "u", "NEGATIVE"));
  EXPECT_EQ(cache.lookup(cache_key("m", 0.0, "sys", "u")), "NEGATIVE");
  EXPECT_EQ(cache.entries().size(), 2u);
  EXPECT_EQ(cache.distinct_keys(), 1u);
  EXPECT_FALSE(cache.path().has_value());
}

TEST(ResponseCacheTest, PersistsAcrossInstances) {
  TempFile file("cache-persist");
  {
    ResponseCache cache(file.path());
    cache.store(entry("m", "a", "POSITIVE"));
    cache.store(entry("m", "b", "NEUTRAL"));
  }
  ResponseCache reopened(file.path());
  EXPECT_EQ(reopened.distinct_keys(), 2u);
  EXPECT_EQ(reopened.lookup(cache_key("m", 0.0, "sys", "b")), "NEUTRAL");
  EXPECT_EQ(reopened.entries().front(), entry("m", "a", "POSITIVE"));
}

TEST(ResponseCacheTest, InterruptedAppendIsIgnoredAndRepaired) {
  TempFile file("cache-partial");
  {
    ResponseCache cache(file.path());
    cache.store(entry("m", "a", "POSITIVE"));
  }
  {
    std::ofstream out(file.path(), std::ios::app | std::ios::binary);
    out << R"({"key":"abc","model_id":"m","temper)";
  }
  {
    ResponseCache cache(file.path());
    EXPECT_EQ(cache.entries().size(), 1u);
    cache.store(entry("m", "b", "NEGATIVE"));
  }
  ResponseCache again(file.path());
  EXPECT_EQ(again.entries().size(), 2u);
  EXPECT_EQ(again.lookup(cache_key("m", 0.0, "sys", "b")), "NEGATIVE");
}

TEST(ResponseCacheTest, CorruptCompleteLineIsAnError) {
  TempFile file("cache-corrupt");
  {
    std::ofstream out(file.path());
    out << "not json\n";
  }
  EXPECT_THROW(ResponseCache{file.path()}, LineError);
}

TEST(ResponseCacheTest, EvictRewritesTheFile) {
  TempFile file("cache-evict");
  ResponseCache cache(file.path());
  cache.store(entry("old", "a", "POSITIVE"));
  cache.store(entry("new", "a", "NEGATIVE"));
  cache.store(entry("old", "b", "NEUTRAL"));
  EXPECT_EQ(cache.evict([](const CacheEntry& e) { return e.model_id == "old"; }), 2u);
  EXPECT_EQ(cache.lookup(cache_key("old", 0.0, "sys", "a")), std::nullopt);
  EXPECT_EQ(cache.lookup(cache_key("new", 0.0, "sys", "a")), "NEGATIVE");
  ResponseCache reopened(file.path());
  EXPECT_EQ(reopened.entries().size(), 1u);
  EXPECT_EQ(slurp(file.path()).find("\"old\""), std::string::npos);
  EXPECT_FALSE(fs::exists(file.path().string() + ".tmp"));
}

TEST(ResponseCacheTest, ConcurrentStoresAllLand) {
  TempFile file("cache-concurrent");
  {
    ResponseCache cache(file.path());
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&cache, t] {
        for (int i = 0; i < 50; ++i) {
          cache.store(entry("m", std::to_string(t) + "-" + std::to_string(i), "NEUTRAL"));
          cache.lookup(cache_key("m", 0.0, "sys", "0-0"));
        }
      });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(cache.distinct_keys(), 400u);
  }
  EXPECT_EQ(ResponseCache(file.path()).distinct_keys(), 400u);
}

}  // namespace
}  // namespace sentiqa
