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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ports.h"
#include "sentiqa/prompt.h"

namespace sentiqa::cli {
namespace {

namespace fs = std::filesystem;

const std::string kData = SENTIQA_TEST_DATA_DIR;

struct Result {
  int status = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path run_dir_of(const Result& r) {
  const std::string marker = "run directory: ";
  const auto pos = r.out.rfind(marker);
  if (pos == std::string::npos) return {};
  std::string line = r.out.substr(pos + marker.size());
  return line.substr(0, line.find('\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sentiqa_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::vector<std::string> corpus_args() const {
    return {"--corpus", kData + "/amazon_small.tsv", "--format", "amazon"};
  }
  std::vector<std::string> with(std::vector<std::string> head,
                                const std::vector<std::string>& tail) const {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  }
  std::string out() const { return (dir_ / "runs").string(); }

  fs::path dir_;
};

TEST_F(CliTest, StatsPrintsDatasetRowAndHistogram) {
  const fs::path hist = dir_ / "hist.tsv";
  const Result r = invoke(with({"stats"}, with(corpus_args(), {"--histogram", hist.string()})));
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("No. of samples"), std::string::npos);
  EXPECT_NE(r.out.find("Avg. text length"), std::string::npos);
  EXPECT_NE(r.out.find("0.5000/0.1667/0.3333"), std::string::npos);
  std::istringstream in(slurp(hist));
  std::size_t length = 0, count = 0, total = 0;
  while (in >> length >> count) total += count;
  EXPECT_EQ(total, 6u);
}

TEST_F(CliTest, EmptyCorpusExitsOneNamingTheFile) {
  const fs::path empty = dir_ / "empty.tsv";
  std::ofstream(empty).close();
  const Result r = invoke({"stats", "--corpus", empty.string(), "--format", "amazon"});
  EXPECT_EQ(r.status, kExitDataError);
  EXPECT_NE(r.err.find("empty.tsv"), std::string::npos);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(invoke({"stats", "--corpus", kData + "/amazon_small.tsv", "--format", "xml"}).status,
            kExitConfigError);
  EXPECT_EQ(invoke(with({"baseline"}, with(corpus_args(), {"--template", "nope"}))).status,
            kExitConfigError);
  EXPECT_EQ(invoke(with({"attack"}, with(corpus_args(), {"--kind", "leet", "--out", out()})))
                .status,
            kExitConfigError);
  EXPECT_EQ(invoke(with({"baseline"}, with(corpus_args(), {"--temperature", "-1"}))).status,
            kExitConfigError);
  EXPECT_EQ(invoke({"frobnicate"}).status, kExitConfigError);
  EXPECT_EQ(invoke({"attack", "--corpus", "x.tsv"}).status, kExitConfigError);  // --kind missing
  EXPECT_EQ(invoke({"--help"}).status, kExitOk);
}

TEST_F(CliTest, RemoteWithoutKeyIsAConfigError) {
  unsetenv("SENTIQA_CLI_TEST_KEY");
  const Result r = invoke(with({"baseline"}, with(corpus_args(), {"--backend", "remote",
                                                                  "--api-key-env",
                                                                  "SENTIQA_CLI_TEST_KEY",
                                                                  "--out", out()})));
  EXPECT_EQ(r.status, kExitConfigError);
  EXPECT_NE(r.err.find("SENTIQA_CLI_TEST_KEY"), std::string::npos);
  EXPECT_FALSE(fs::exists(out()));
}

TEST_F(CliTest, UnreachableRemoteIsATransportCollapse) {
  setenv("SENTIQA_CLI_TEST_KEY", "sk-secret-value", 1);
  const int port = testnet::closed_port();
  const Result r = invoke(with(
      {"baseline"},
      with(corpus_args(), {"--backend", "remote", "--api-key-env", "SENTIQA_CLI_TEST_KEY",
                           "--endpoint", "http://127.0.0.1:" + std::to_string(port) + "/v1",
                           "--max-retries", "0", "--timeout", "5", "--rate-limit", "1000", "--out", out()})));
  unsetenv("SENTIQA_CLI_TEST_KEY");
  EXPECT_EQ(r.status, kExitTransportCollapse);
  const fs::path run = run_dir_of(r);
  ASSERT_TRUE(fs::exists(run / "manifest.json"));
  for (const auto& entry : fs::directory_iterator(run)) {
    EXPECT_EQ(slurp(entry.path()).find("sk-secret-value"), std::string::npos);
  }
}

TEST_F(CliTest, BaselineWritesRunDirectory) {
  const Result r = invoke(with({"baseline"}, with(corpus_args(), {"--out", out()})));
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const fs::path run = run_dir_of(r);
  for (const char* f : {"manifest.json", "report-baseline.json", "report-baseline.txt",
                        "records-baseline.jsonl"}) {
    EXPECT_TRUE(fs::exists(run / f)) << f;
  }
  const auto manifest = nlohmann::json::parse(slurp(run / "manifest.json"));
  EXPECT_EQ(manifest["config"]["seed"], 0);
  EXPECT_EQ(manifest["backend_calls"], 6);
  EXPECT_TRUE(manifest.contains("created_at"));
  const std::string name = run.filename().string();
  EXPECT_EQ(name.substr(16, 1), "-");  // 20261014T120000Z-<digest>
  EXPECT_EQ(name.substr(17, 16), manifest["digest"].get<std::string>());
}

TEST_F(CliTest, AttackRunsAreByteIdentical) {
  const auto args = with({"attack"}, with(corpus_args(), {"--kind", "synonym", "--kind", "typo",
                                                          "--seed", "0", "--out", out()}));
  const Result a = invoke(args);
  const Result b = invoke(args);
  ASSERT_EQ(a.status, kExitOk) << a.err;
  ASSERT_EQ(b.status, kExitOk) << b.err;
  ASSERT_NE(run_dir_of(a), run_dir_of(b));
  for (const char* f : {"report-baseline.json", "report-synonym.json", "report-typo.json",
                        "records-typo.jsonl", "report-typo.txt"}) {
    EXPECT_EQ(slurp(run_dir_of(a) / f), slurp(run_dir_of(b) / f)) << f;
    EXPECT_FALSE(slurp(run_dir_of(a) / f).empty());
  }
  EXPECT_NE(a.out.find("delta_diff"), std::string::npos);
}

TEST_F(CliTest, DifferentSeedsChangeTypoOutput) {
  const Result a = invoke(with({"attack"}, with(corpus_args(), {"--kind", "typo-substitute",
                                                                "--seed", "1", "--out", out()})));
  const Result b = invoke(with({"attack"}, with(corpus_args(), {"--kind", "typo-substitute",
                                                                "--seed", "2", "--out", out()})));
  ASSERT_EQ(a.status, kExitOk);
  EXPECT_NE(slurp(run_dir_of(a) / "records-typo-substitute.jsonl"),
            slurp(run_dir_of(b) / "records-typo-substitute.jsonl"));
}

TEST_F(CliTest, CompareIdenticalRunsReportsNoDrift) {
  const auto args = with({"attack"}, with(corpus_args(), {"--kind", "homoglyph", "--out", out()}));
  const fs::path a = run_dir_of(invoke(args));
  const fs::path b = run_dir_of(invoke(args));
  const Result r = invoke({"compare", a.string(), b.string()});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(r.out, "no drift\n");
  const Result h = invoke({"compare", a.string(), b.string(), "--attack", "homoglyph", "--json",
                           (dir_ / "drift.json").string()});
  EXPECT_EQ(h.status, kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(slurp(dir_ / "drift.json"))["zero_drift"].get<bool>());
  EXPECT_EQ(invoke({"compare", a.string(), (dir_ / "missing").string()}).status, kExitDataError);
}

TEST_F(CliTest, CompareDetectsChangedTemplateRuns) {
  const fs::path a = run_dir_of(invoke(with({"baseline"}, with(corpus_args(), {"--out", out()}))));
  const fs::path b = run_dir_of(invoke(with(
      {"baseline"}, with(corpus_args(), {"--template", "few_shot", "--out", out()}))));
  EXPECT_EQ(invoke({"compare", a.string(), b.string()}).status, kExitDataError);
}

TEST_F(CliTest, CacheMakesReRunsFree) {
  const std::string cache = (dir_ / "cache.jsonl").string();
  const auto args = with({"attack"}, with(corpus_args(), {"--kind", "synonym", "--cache", cache,
                                                          "--out", out()}));
  const Result first = invoke(args);
  ASSERT_EQ(first.status, kExitOk) << first.err;
  const Result second = invoke(args);
  const auto m1 = nlohmann::json::parse(slurp(run_dir_of(first) / "manifest.json"));
  const auto m2 = nlohmann::json::parse(slurp(run_dir_of(second) / "manifest.json"));
  EXPECT_GT(m1["backend_calls"].get<int>(), 0);
  EXPECT_EQ(m2["backend_calls"].get<int>(), 0);

  const Result inspect = invoke({"cache", "inspect", "--cache", cache});
  EXPECT_EQ(inspect.status, kExitOk);
  EXPECT_NE(inspect.out.find("distinct keys: " + std::to_string(m1["backend_calls"].get<int>())),
            std::string::npos);
  EXPECT_NE(inspect.out.find("gpt-3.5-turbo"), std::string::npos);
  EXPECT_EQ(invoke({"cache", "evict", "--cache", cache}).status, kExitConfigError);
  const Result none = invoke({"cache", "evict", "--cache", cache, "--model", "other"});
  EXPECT_EQ(none.out, "evicted 0 entries\n");
  const Result evict = invoke({"cache", "evict", "--cache", cache, "--all"});
  EXPECT_EQ(evict.status, kExitOk);
  EXPECT_NE(evict.out.find("evicted"), std::string::npos);
  EXPECT_NE(invoke({"cache", "inspect", "--cache", cache}).out.find("entries: 0"),
            std::string::npos);
  EXPECT_EQ(invoke({"cache", "inspect", "--cache", (dir_ / "none.jsonl").string()}).status,
            kExitDataError);
}

TEST_F(CliTest, StabilityProbe) {
  const Result r = invoke(with({"stability"}, with(corpus_args(), {"--id", "am1", "--trials",
                                                                   "5", "--out", out()})));
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("disagreement_rate: 0.0000"), std::string::npos);
  EXPECT_NE(r.out.find("POSITIVE=5"), std::string::npos);
  EXPECT_EQ(invoke(with({"stability"}, with(corpus_args(), {"--id", "zz", "--out", out()})))
                .status,
            kExitConfigError);
  EXPECT_EQ(invoke(with({"stability"}, with(corpus_args(), {"--id", "am1", "--trials", "1",
                                                            "--out", out()})))
                .status,
            kExitConfigError);
}

TEST_F(CliTest, TemplateFileAndSampling) {
  const fs::path tmpl = dir_ / "t.json";
  PromptTemplate t = builtin_template("zero_shot");
  t.name = "custom_tmpl";
  save_template(tmpl, t);
  const Result r = invoke(with({"baseline"}, with(corpus_args(), {"--template", tmpl.string(),
                                                                  "--sample", "3", "--out",
                                                                  out()})));
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("template: custom_tmpl"), std::string::npos);
  EXPECT_NE(r.out.find("samples: 3"), std::string::npos);
}

}  // namespace
}  // namespace sentiqa::cli
