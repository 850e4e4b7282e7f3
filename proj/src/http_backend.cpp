// Copyright 2026 The fedsim Authors.
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

#include "fedsim/http_backend.hpp"

#include <httplib.h>

#include <cstdlib>
#include <thread>

namespace fedsim {

using json = nlohmann::json;

namespace {

constexpr std::chrono::milliseconds kMaxBackoff{60'000};

void split_url(const std::string& url, std::string& base, std::string& path) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint must be an absolute http(s) URL: " + url);
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("unsupported endpoint scheme '" + scheme + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  base = url.substr(0, path_start);
  path = path_start == std::string::npos ? "/" : url.substr(path_start);
}

}  // namespace

void BackendConfig::validate() const {
  std::string base, path;
  split_url(endpoint, base, path);
  if (model.empty()) throw ConfigError("backend model must be non-empty");
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
  if (max_tokens <= 0) throw ConfigError("max_tokens must be positive");
  if (timeout.count() <= 0) throw ConfigError("timeout must be positive");
  if (max_retries < 0 || max_retries > 10) throw ConfigError("max_retries must be within 0..10");
  if (backoff_base.count() < 0) throw ConfigError("backoff_base must be non-negative");
  if (api_key_env.empty()) throw ConfigError("api_key_env must name an environment variable");
}

BackendConfig BackendConfig::from_json(const json& j) {
  BackendConfig c;
  try {
    c.endpoint = j.value("endpoint", c.endpoint);
    c.model = j.value("model", c.model);
    c.temperature = j.value("temperature", c.temperature);
    c.max_tokens = j.value("max_tokens", c.max_tokens);
    c.timeout = std::chrono::milliseconds(j.value("timeout_ms", c.timeout.count()));
    c.max_retries = j.value("max_retries", c.max_retries);
    c.backoff_base = std::chrono::milliseconds(j.value("backoff_base_ms", c.backoff_base.count()));
    c.api_key_env = j.value("api_key_env", c.api_key_env);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("backend config: ") + e.what());
  }
  return c;
}

json BackendConfig::to_json() const {
  return json{{"endpoint", endpoint},
              {"model", model},
              {"temperature", temperature},
              {"max_tokens", max_tokens},
              {"timeout_ms", timeout.count()},
              {"max_retries", max_retries},
              {"backoff_base_ms", backoff_base.count()},
              {"api_key_env", api_key_env}};
}

std::chrono::milliseconds backoff_delay(std::chrono::milliseconds base, int retry) {
  auto delay = base;
  for (int i = 0; i < retry && delay < kMaxBackoff; ++i) delay *= 2;
  return std::min(delay, kMaxBackoff);
}

bool is_retryable_status(int status) {
  return status == 408 || status == 409 || status == 429 || status >= 500;
}

json build_chat_request(const BackendConfig& config, std::span<const ChatMessage> messages) {
  json msgs = json::array();
  for (const auto& m : messages) {
    msgs.push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
  }
  return json{{"model", config.model},
              {"messages", std::move(msgs)},
              {"temperature", config.temperature},
              {"max_tokens", config.max_tokens}};
}

Completion parse_chat_response(const std::string& body) {
  try {
    const auto j = json::parse(body);
    Completion c;
    const auto& content = j.at("choices").at(0).at("message").at("content");
    c.content = content.is_null() ? "" : content.get<std::string>();
    if (j.contains("usage") && j.at("usage").is_object()) {
      const auto& u = j.at("usage");
      c.usage.prompt_tokens = u.value("prompt_tokens", std::int64_t{0});
      c.usage.completion_tokens = u.value("completion_tokens", std::int64_t{0});
    }
    return c;
  } catch (const json::exception& e) {
    throw BackendError(std::string("malformed chat completion response: ") + e.what(), 200, 1);
  }
}

OpenAiBackend::OpenAiBackend(BackendConfig config, std::string api_key, LogFn log, Sleeper sleeper)
    : config_(std::move(config)),
      api_key_(std::move(api_key)),
      log_(std::move(log)),
      sleeper_(std::move(sleeper)) {
  config_.validate();
  split_url(config_.endpoint, base_url_, path_);
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string OpenAiBackend::credential_from_env(const BackendConfig& config) {
  const char* value = std::getenv(config.api_key_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw ConfigError("environment variable " + config.api_key_env +
                      " is not set; the live backend needs an API key");
  }
  return value;
}

Completion OpenAiBackend::complete(const Session& session, std::span<const ChatMessage> messages,
                                   int turn) {
  const std::string body = build_chat_request(config_, messages).dump();

  httplib::Client client(base_url_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  if (!api_key_.empty()) client.set_bearer_token_auth(api_key_);

  const int max_attempts = config_.max_retries + 1;
  std::string last_error;
  int last_status = 0;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    auto res = client.Post(path_, body, "application/json");
    if (res && res->status >= 200 && res->status < 300) {
      return parse_chat_response(res->body);
    }
    if (res) {
      last_status = res->status;
      last_error = "HTTP " + std::to_string(res->status);
      if (!is_retryable_status(res->status)) {
        throw BackendError(last_error + " from " + config_.endpoint + ": " + res->body.substr(0, 500),
                           last_status, attempt);
      }
    } else {
      last_status = 0;
      last_error = "transport error: " + httplib::to_string(res.error());
    }
    if (attempt == max_attempts) break;
    const auto delay = backoff_delay(config_.backoff_base, attempt - 1);
    if (log_) {
      log_("retry " + std::to_string(attempt) + "/" + std::to_string(config_.max_retries) + " for " +
           session.id() + " turn " + std::to_string(turn) + " after " + last_error + ", backoff " +
           std::to_string(delay.count()) + " ms");
    }
    sleeper_(delay);
  }
  throw BackendError(last_error + " from " + config_.endpoint + " after " +
                         std::to_string(max_attempts) + " attempts",
                     last_status, max_attempts);
}

}  // namespace fedsim
