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

#include "fedsim/backend.hpp"

#include <stdexcept>

#include "fedsim/text.hpp"

namespace fedsim {

std::string_view to_string(MessageRole r) {
  switch (r) {
    case MessageRole::System: return "system";
    case MessageRole::User: return "user";
    case MessageRole::Assistant: return "assistant";
  }
  return "user";
}

Session::Session(std::string id, std::string agent_name, std::string system_prompt)
    : id_(std::move(id)), agent_name_(std::move(agent_name)) {
  history_.push_back({MessageRole::System, std::move(system_prompt)});
}

std::string compose_user_message(const std::vector<std::string>& staged, std::string_view prompt) {
  std::string out;
  for (const auto& block : staged) {
    out += block;
    out += "\n\n";
  }
  out += prompt;
  return out;
}

Session ChatBackend::open_session(std::string agent_name, std::string system_prompt) {
  if (trim(system_prompt).empty()) throw std::invalid_argument("system prompt must be non-empty");
  const auto n = next_session_.fetch_add(1);
  std::string id = "s" + std::to_string(n) + ":" + agent_name;
  return Session(std::move(id), std::move(agent_name), std::move(system_prompt));
}

std::string ChatBackend::send(Session& session, std::string_view prompt) {
  if (trim(prompt).empty()) throw std::invalid_argument("prompt must be non-empty");

  std::vector<ChatMessage> messages = session.history_;
  messages.push_back({MessageRole::User, compose_user_message(session.staged_, prompt)});
  const int turn = session.turns_ + 1;

  Completion reply = complete(session, messages, turn);
  if (trim(reply.content).empty()) {
    throw BackendError("empty completion for session " + session.id_ + " at turn " +
                           std::to_string(turn),
                       0, 1);
  }

  session.history_.push_back(std::move(messages.back()));
  session.history_.push_back({MessageRole::Assistant, reply.content});
  session.staged_.clear();
  session.usage_ += reply.usage;
  session.turns_ = turn;
  return reply.content;
}

}  // namespace fedsim
