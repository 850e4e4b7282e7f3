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

#pragma once

#include <chrono>
#include <functional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "fedsim/backend.hpp"

namespace fedsim {

struct BackendConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4o-mini";
  double temperature = 0.7;
  int max_tokens = 1024;
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 4;  // 0..10
  std::chrono::milliseconds backoff_base{1'000};
  std::string api_key_env = "OPENAI_API_KEY";

  /// Throws ConfigError.
  void validate() const;

  static BackendConfig from_json(const nlohmann::json& j);  // missing keys keep defaults
  nlohmann::json to_json() const;
};

/// Delay before retry `retry` (0-based): backoff_base * 2^retry, capped at 60 s.
std::chrono::milliseconds backoff_delay(std::chrono::milliseconds base, int retry);

/// Statuses worth retrying: 408, 409, 429 and 5xx. Other 4xx fail immediately.
bool is_retryable_status(int status);

/// Request body for an OpenAI-compatible chat-completions call.
nlohmann::json build_chat_request(const BackendConfig& config, std::span<const ChatMessage> messages);
/// First choice's content plus usage counts. Throws BackendError on a malformed body.
Completion parse_chat_response(const std::string& body);

/// Stateless chat-completions client: every call resends the full history.
class OpenAiBackend : public ChatBackend {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  /// `api_key` may be empty for local servers that need no credential.
  OpenAiBackend(BackendConfig config, std::string api_key, LogFn log = {}, Sleeper sleeper = {});

  /// Reads the credential from `config.api_key_env`; throws ConfigError if unset.
  static std::string credential_from_env(const BackendConfig& config);

  std::string model_name() const override { return config_.model; }
  const BackendConfig& config() const { return config_; }

 protected:
  Completion complete(const Session& session, std::span<const ChatMessage> messages,
                      int turn) override;

 private:
  BackendConfig config_;
  std::string api_key_;
  std::string base_url_;  // scheme://host[:port]
  std::string path_;
  LogFn log_;
  Sleeper sleeper_;
};

}  // namespace fedsim
