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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "ports.h"
#include "json.hpp"
#include "sentiqa/client.h"
#include "sentiqa/error.h"

namespace sentiqa {
namespace {

using nlohmann::json;

class FakeCompletionServer {
 public:
  explicit FakeCompletionServer(std::function<void(const httplib::Request&, httplib::Response&)> h)
      : handler_(std::move(h)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      handler_(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeCompletionServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }
  std::atomic<int> hits{0};

 private:
  httplib::Server server_;
  std::function<void(const httplib::Request&, httplib::Response&)> handler_;
  int port_ = 0;
  std::thread thread_;
};

void reply(httplib::Response& res, const std::string& content) {
  const json body = {{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}};
  res.set_content(body.dump(), "application/json");
}

class RemoteBackendTest : public ::testing::Test {
 protected:
  void SetUp() override { setenv("SENTIQA_TEST_KEY", "sk-test-123", 1); }
  void TearDown() override { unsetenv("SENTIQA_TEST_KEY"); }

  ClassifierConfig config(const std::string& url) const {
    ClassifierConfig c;
    c.endpoint_url = url;
    c.api_key_env = "SENTIQA_TEST_KEY";
    c.rate_limit = 1000.0;
    c.timeout = std::chrono::milliseconds(2000);
    return c;
  }

  ClassificationRequest request() const {
    return {render(builtin_template("zero_shot"), "Great phone"), "Great phone"};
  }
};

TEST_F(RemoteBackendTest, SendsChatCompletionRequest) {
  json seen;
  std::string auth;
  FakeCompletionServer server([&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    reply(res, "POSITIVE");
  });
  RemoteBackend backend;
  EXPECT_TRUE(backend.is_remote());
  ClassifierConfig c = config(server.url());
  c.model_id = "gpt-test";
  c.temperature = 0.25;
  EXPECT_EQ(backend.query(request(), c), "POSITIVE");
  EXPECT_EQ(auth, "Bearer sk-test-123");
  EXPECT_EQ(seen["model"], "gpt-test");
  EXPECT_DOUBLE_EQ(seen["temperature"].get<double>(), 0.25);
  ASSERT_EQ(seen["messages"].size(), 2u);
  EXPECT_EQ(seen["messages"][0]["role"], "system");
  EXPECT_EQ(seen["messages"][0]["content"], kDefaultSystemPrompt);
  EXPECT_EQ(seen["messages"][1]["role"], "user");
  EXPECT_NE(seen["messages"][1]["content"].get<std::string>().find("Great phone"),
            std::string::npos);
}

TEST_F(RemoteBackendTest, CustomAuthHeaderCarriesTheBareKey) {
  std::string key;
  FakeCompletionServer server([&](const httplib::Request& req, httplib::Response& res) {
    key = req.get_header_value("api-key");
    reply(res, "NEUTRAL");
  });
  ClassifierConfig c = config(server.url());
  c.auth_header = "api-key";
  RemoteBackend backend;
  EXPECT_EQ(backend.query(request(), c), "NEUTRAL");
  EXPECT_EQ(key, "sk-test-123");
}

TEST_F(RemoteBackendTest, RetriesRateLimitAndServerErrors) {
  std::atomic<int> calls{0};
  FakeCompletionServer flaky([&](const httplib::Request&, httplib::Response& res) {
    const int n = ++calls;
    if (n == 1) {
      res.status = 429;
    } else if (n == 2) {
      res.status = 503;
    } else {
      reply(res, "NEGATIVE");
    }
  });
  Classifier classifier(std::make_shared<RemoteBackend>(), config(flaky.url()));
  std::vector<std::chrono::milliseconds> sleeps;
  classifier.set_sleeper([&](std::chrono::milliseconds d) { sleeps.push_back(d); });
  EXPECT_EQ(classifier.classify(request()).predicted, SentimentLabel::kNegative);
  EXPECT_EQ(flaky.hits, 3);
  EXPECT_EQ(sleeps.size(), 2u);
}

TEST_F(RemoteBackendTest, UnauthorizedIsNotRetried) {
  FakeCompletionServer server([](const httplib::Request&, httplib::Response& res) {
    res.status = 401;
  });
  Classifier classifier(std::make_shared<RemoteBackend>(), config(server.url()));
  classifier.set_sleeper([](std::chrono::milliseconds) {});
  EXPECT_THROW(classifier.classify(request()), TransportError);
  EXPECT_EQ(server.hits, 1);
}

TEST_F(RemoteBackendTest, MalformedBodyIsATransportError) {
  FakeCompletionServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"choices\": []}", "application/json");
  });
  RemoteBackend backend;
  try {
    backend.query(request(), config(server.url()));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_FALSE(e.retryable());
  }
}

TEST_F(RemoteBackendTest, ConnectionFailureIsRetryable) {
  const int port = testnet::closed_port();
  RemoteBackend backend;
  try {
    backend.query(request(), config("http://127.0.0.1:" + std::to_string(port) + "/v1"));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_TRUE(e.retryable());
  }
}

TEST_F(RemoteBackendTest, MissingKeyFailsWithoutContactingTheServer) {
  FakeCompletionServer server([](const httplib::Request&, httplib::Response& res) {
    reply(res, "POSITIVE");
  });
  unsetenv("SENTIQA_TEST_KEY");
  RemoteBackend backend;
  try {
    backend.query(request(), config(server.url()));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_FALSE(e.retryable());
    EXPECT_EQ(std::string(e.what()).find("sk-test"), std::string::npos);
  }
  EXPECT_EQ(server.hits, 0);
}

TEST_F(RemoteBackendTest, RejectsNonHttpEndpoints) {
  RemoteBackend backend;
  try {
    backend.query(request(), config("ftp://example.com/x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

}  // namespace
}  // namespace sentiqa
