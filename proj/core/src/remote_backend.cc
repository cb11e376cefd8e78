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

#include <cstdlib>
#include <regex>

#include "httplib.h"
#include "json.hpp"
#include "sentiqa/client.h"
#include "sentiqa/error.h"

namespace sentiqa {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) {
    throw Error(ErrorCode::kConfig, "endpoint '" + url + "' is not an http(s) URL");
  }
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

std::string RemoteBackend::query(const ClassificationRequest& request,
                                 const ClassifierConfig& config) {
  const char* key = std::getenv(config.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw TransportError("API key variable " + config.api_key_env + " is not set", false);
  }
  const Endpoint endpoint = split_url(config.endpoint_url);

  json messages = json::array();
  if (!request.prompt.system.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.prompt.system}});
  }
  messages.push_back({{"role", "user"}, {"content", request.prompt.user}});
  const json body = {
      {"model", config.model_id}, {"temperature", config.temperature}, {"messages", messages}};

  httplib::Client client(endpoint.base);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers;
  if (config.auth_header == "Authorization") {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  } else {
    headers.emplace(config.auth_header, key);
  }

  const auto res = client.Post(endpoint.path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("request to " + endpoint.base + " failed: " + httplib::to_string(res.error()),
                         true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransportError("HTTP " + std::to_string(res->status) + " from " + endpoint.base, true);
  }
  if (res->status != 200) {
    throw TransportError("HTTP " + std::to_string(res->status) + " from " + endpoint.base, false);
  }
  try {
    const json doc = json::parse(res->body);
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed completion response: ") + e.what(), false);
  }
}

}  // namespace sentiqa
