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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedsim/templates.hpp"
#include "fedsim/types.hpp"

namespace fedsim {

enum class Role { Chair, ViceChair, RegionalPresident, Governor, Economist, LegalExpert };

std::string_view to_string(Role r);  // "chair", "vice_chair", ...
Role parse_role(std::string_view text);
bool is_voting(Role r);
/// Title used in the character prompt when the profile does not set one.
std::string_view default_title(Role r);

/// A meeting participant. `name` is the short roster key ("J. Powell"), the one
/// ground-truth records use; `full_name` is what the agent is told it is.
struct AgentProfile {
  std::string name;
  std::string full_name;  // empty: use name
  std::string title;      // empty: default_title(role)
  Role role = Role::Governor;
  std::string gender;
  std::vector<std::string> education;
  std::vector<std::string> past_positions;
  std::string stance;
  std::string personality;
  std::optional<VoteDirection> initial_viewpoint;

  const std::string& display_name() const { return full_name.empty() ? name : full_name; }
  bool voting() const { return is_voting(role); }
};

/// Ordered list of participants. Construct through Roster::make, which
/// enforces the committee shape.
class Roster {
 public:
  static Roster make(std::vector<AgentProfile> agents);

  const std::vector<AgentProfile>& agents() const { return agents_; }
  const AgentProfile& find(std::string_view name) const;
  const AgentProfile& economist() const;
  const AgentProfile& legal_expert() const;
  const AgentProfile* chair() const;
  const AgentProfile* vice_chair() const;

 private:
  explicit Roster(std::vector<AgentProfile> agents) : agents_(std::move(agents)) {}
  std::vector<AgentProfile> agents_;
};

/// Throws ValidationError naming the violated invariant.
void validate_roster(const std::vector<AgentProfile>& agents);

Roster roster_from_json(const nlohmann::json& j);
nlohmann::json roster_to_json(const Roster& roster);
/// Throws ParseError for malformed JSON, ValidationError for invariant violations.
Roster load_roster(const std::filesystem::path& path);

/// Voters in roster order: everyone except the economist and the legal expert.
std::vector<AgentProfile> voting_agents(const Roster& roster);

/// Character, socio-demographic and personality prompts joined in that order.
/// This becomes the agent's system prompt.
std::string render_character_prompt(const AgentProfile& profile, const MeetingDate& date,
                                    PolicyRate current_rate, const TemplateSet& templates);

}  // namespace fedsim
