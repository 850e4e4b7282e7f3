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

#include "fedsim/scripted_backend.hpp"

#include <regex>

#include "fedsim/text.hpp"

namespace fedsim {

using json = nlohmann::json;

Script Script::from_json(const json& j) {
  Script s;
  try {
    if (j.contains("default_reply") && !j.at("default_reply").is_null()) {
      s.default_reply = j.at("default_reply").get<std::string>();
    }
    if (!j.contains("replies")) return s;
    for (const auto& [agent, turns] : j.at("replies").items()) {
      if (turns.is_array()) {
        int turn = 1;
        for (const auto& reply : turns) s.replies[{agent, turn++}] = reply.get<std::string>();
      } else {
        for (const auto& [turn, reply] : turns.items()) {
          const int n = std::stoi(turn);
          if (n < 1) throw ParseError("script turn numbers start at 1");
          s.replies[{agent, n}] = reply.get<std::string>();
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("script: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("script: turn keys must be integers");
  }
  return s;
}

Script Script::load(const std::filesystem::path& path) {
  try {
    return from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw ParseError("script " + path.string() + ": " + e.what());
  }
}

json Script::to_json() const {
  json replies = json::object();
  for (const auto& [key, reply] : this->replies) {
    replies[key.first][std::to_string(key.second)] = reply;
  }
  json j{{"replies", std::move(replies)}};
  if (default_reply) j["default_reply"] = *default_reply;
  return j;
}

ScriptedBackend::ScriptedBackend(Script script, std::string model)
    : script_(std::move(script)), model_(std::move(model)) {}

Completion ScriptedBackend::complete(const Session& session, std::span<const ChatMessage>,
                                     int turn) {
  ScriptKey key{session.agent_name(), turn};
  std::string reply;
  bool from_default = false;
  if (const auto it = script_.replies.find(key); it != script_.replies.end()) {
    reply = it->second;
  } else if (script_.default_reply) {
    reply = *script_.default_reply;
    from_default = true;
  } else {
    throw ScriptExhaustedError(session.agent_name(), turn, session.id());
  }
  std::lock_guard lock(mu_);
  consumed_.push_back({std::move(key), from_default});
  return {std::move(reply), {}};
}

std::vector<ConsumedTurn> ScriptedBackend::consumed() const {
  std::lock_guard lock(mu_);
  return consumed_;
}

std::size_t ScriptedBackend::calls() const {
  std::lock_guard lock(mu_);
  return consumed_.size();
}

Completion RecallBackend::complete(const Session&, std::span<const ChatMessage> messages, int) {
  static const std::regex kQuestion(R"(region of ([^?\n]+)\?)");
  const std::string& last = messages.back().content;
  std::smatch m;
  if (!std::regex_search(last, m, kQuestion)) return {"Completed", {}};

  const std::string header = "== " + std::string(trim(m[1].str())) + " ==";
  for (auto it = messages.rbegin() + 1; it != messages.rend(); ++it) {
    if (it->role != MessageRole::User) continue;
    const auto lines = split_lines(it->content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (trim(lines[i]) != header) continue;
      std::vector<std::string> body;
      for (std::size_t k = i + 1; k < lines.size(); ++k) {
        const auto line = trim(lines[k]);
        if (line.starts_with("== ") && line.ends_with(" ==")) break;
        body.emplace_back(lines[k]);
      }
      return {std::string(trim(join(body, "\n"))), {}};
    }
  }
  return {"I do not recall that region.", {}};
}

}  // namespace fedsim
