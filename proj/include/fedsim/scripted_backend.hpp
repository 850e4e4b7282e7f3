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

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedsim/backend.hpp"

namespace fedsim {

/// (agent name, 1-based turn within that agent's session).
using ScriptKey = std::pair<std::string, int>;

struct Script {
  std::map<ScriptKey, std::string> replies;
  std::optional<std::string> default_reply;

  /// {"default_reply": "...", "replies": {"<agent>": {"<turn>": "..."} | ["turn 1", ...]}}
  static Script from_json(const nlohmann::json& j);
  static Script load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

struct ConsumedTurn {
  ScriptKey key;
  bool from_default = false;
};

/// Replays canned replies keyed by (agent, turn). Makes a meeting a pure
/// function of its inputs; never touches the network.
class ScriptedBackend : public ChatBackend {
 public:
  explicit ScriptedBackend(Script script, std::string model = "scripted");

  std::string model_name() const override { return model_; }

  /// Every key served so far, in service order.
  std::vector<ConsumedTurn> consumed() const;
  std::size_t calls() const;

 protected:
  Completion complete(const Session& session, std::span<const ChatMessage> messages,
                      int turn) override;

 private:
  Script script_;
  std::string model_;
  mutable std::mutex mu_;
  std::vector<ConsumedTurn> consumed_;
};

/// Test double for comprehension checks: acknowledges everything with
/// "Completed", except that a question naming a region ("... region of X?") is
/// answered by quoting section X verbatim from materials earlier in the session.
class RecallBackend : public ChatBackend {
 public:
  std::string model_name() const override { return "recall"; }

 protected:
  Completion complete(const Session& session, std::span<const ChatMessage> messages,
                      int turn) override;
};

}  // namespace fedsim
