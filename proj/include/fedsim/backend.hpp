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

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fedsim/error.hpp"

namespace fedsim {

/// Operator log sink (progress, retries, token counts). Never part of the transcript.
using LogFn = std::function<void(std::string_view)>;

enum class MessageRole { System, User, Assistant };
std::string_view to_string(MessageRole r);

struct ChatMessage {
  MessageRole role = MessageRole::User;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct TokenUsage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;

  TokenUsage& operator+=(const TokenUsage& o) {
    prompt_tokens += o.prompt_tokens;
    completion_tokens += o.completion_tokens;
    return *this;
  }
  std::int64_t total() const { return prompt_tokens + completion_tokens; }
  bool operator==(const TokenUsage&) const = default;
};

/// Transport failure or non-success HTTP status after retries were exhausted.
class BackendError : public Error {
 public:
  BackendError(const std::string& message, int status, int attempts)
      : Error(message), status_(status), attempts_(attempts) {}
  int status() const noexcept { return status_; }  // 0 for transport errors
  int attempts() const noexcept { return attempts_; }

 private:
  int status_;
  int attempts_;
};

/// The scripted backend has no reply for (agent, turn) and no default.
class ScriptExhaustedError : public BackendError {
 public:
  ScriptExhaustedError(std::string agent, int turn, const std::string& session_id)
      : BackendError("script exhausted for agent '" + agent + "' at turn " + std::to_string(turn) +
                         " (session " + session_id + ")",
                     0, 1),
        agent_(std::move(agent)),
        turn_(turn) {}
  const std::string& agent() const noexcept { return agent_; }
  int turn() const noexcept { return turn_; }

 private:
  std::string agent_;
  int turn_;
};

/// One agent's conversation. History starts with a single system message and
/// then alternates user/assistant; it only ever grows.
///
/// Context that other participants produce (digests, catch-up quotes, the legal
/// review) is staged on the session and delivered as leading blocks of the next
/// user message, so the alternation holds.
class Session {
 public:
  const std::string& id() const { return id_; }
  const std::string& agent_name() const { return agent_name_; }
  const std::vector<ChatMessage>& history() const { return history_; }
  const TokenUsage& usage() const { return usage_; }
  /// Completed user turns.
  int turns() const { return turns_; }

  void stage_context(std::string block) { staged_.push_back(std::move(block)); }
  const std::vector<std::string>& staged_context() const { return staged_; }

 private:
  friend class ChatBackend;
  Session(std::string id, std::string agent_name, std::string system_prompt);

  std::string id_;
  std::string agent_name_;
  std::vector<ChatMessage> history_;
  std::vector<std::string> staged_;
  TokenUsage usage_;
  int turns_ = 0;
};

struct Completion {
  std::string content;
  TokenUsage usage;
};

/// Chat-completion provider. Instances may be shared across threads; a single
/// Session must not be used by two threads at once.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  Session open_session(std::string agent_name, std::string system_prompt);

  /// Appends the user message (staged context first), obtains a completion over
  /// the full history and appends the reply. On failure the session is left
  /// unchanged and the error propagates.
  std::string send(Session& session, std::string_view prompt);

  /// Model identifier recorded in transcripts.
  virtual std::string model_name() const = 0;

 protected:
  /// `messages` is the full history ending with the new user message;
  /// `turn` is its 1-based ordinal among the session's user messages.
  virtual Completion complete(const Session& session, std::span<const ChatMessage> messages,
                              int turn) = 0;

 private:
  std::atomic<std::uint64_t> next_session_{1};
};

/// Joins staged blocks and the prompt the way send() builds a user message.
std::string compose_user_message(const std::vector<std::string>& staged, std::string_view prompt);

}  // namespace fedsim
