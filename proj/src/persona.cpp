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

#include "fedsim/persona.hpp"

#include <algorithm>
#include <set>

#include "fedsim/error.hpp"
#include "fedsim/text.hpp"

namespace fedsim {

using json = nlohmann::json;

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Chair: return "chair";
    case Role::ViceChair: return "vice_chair";
    case Role::RegionalPresident: return "regional_president";
    case Role::Governor: return "governor";
    case Role::Economist: return "economist";
    case Role::LegalExpert: return "legal_expert";
  }
  return "governor";
}

Role parse_role(std::string_view text) {
  for (Role r : {Role::Chair, Role::ViceChair, Role::RegionalPresident, Role::Governor,
                 Role::Economist, Role::LegalExpert}) {
    if (to_string(r) == text) return r;
  }
  throw ParseError("unknown role '" + std::string(text) +
                   "' (expected chair, vice_chair, regional_president, governor, economist or "
                   "legal_expert)");
}

bool is_voting(Role r) { return r != Role::Economist && r != Role::LegalExpert; }

std::string_view default_title(Role r) {
  switch (r) {
    case Role::Chair: return "Chairman";
    case Role::ViceChair: return "Vice Chairman";
    case Role::RegionalPresident: return "Reserve Bank President";
    case Role::Governor: return "Governor";
    case Role::Economist: return "Economist";
    case Role::LegalExpert: return "Legal Counsel";
  }
  return "Governor";
}

void validate_roster(const std::vector<AgentProfile>& agents) {
  std::set<std::string> names;
  int economists = 0, legal = 0, chairs = 0, vice_chairs = 0, voters = 0;
  for (const auto& a : agents) {
    if (trim(a.name).empty()) throw ValidationError("agent with empty name");
    if (!names.insert(a.name).second) {
      throw ValidationError("duplicate agent name '" + a.name + "'");
    }
    if (a.voting()) {
      ++voters;
      if (trim(a.stance).empty()) {
        throw ValidationError("voting agent '" + a.name + "' has an empty stance");
      }
      if (trim(a.personality).empty()) {
        throw ValidationError("voting agent '" + a.name + "' has an empty personality");
      }
    }
    switch (a.role) {
      case Role::Economist: ++economists; break;
      case Role::LegalExpert: ++legal; break;
      case Role::Chair: ++chairs; break;
      case Role::ViceChair: ++vice_chairs; break;
      default: break;
    }
  }
  if (economists == 0) throw ValidationError("roster has no economist");
  if (economists > 1) throw ValidationError("roster has " + std::to_string(economists) + " economists");
  if (legal == 0) throw ValidationError("roster has no legal expert");
  if (legal > 1) throw ValidationError("roster has " + std::to_string(legal) + " legal experts");
  if (chairs == 0) throw ValidationError("roster has no chair");
  if (chairs > 1) throw ValidationError("roster has " + std::to_string(chairs) + " chairs");
  if (vice_chairs > 1) {
    throw ValidationError("roster has " + std::to_string(vice_chairs) + " vice chairs");
  }
  if (voters < 3) {
    throw ValidationError("roster has " + std::to_string(voters) + " voting agents, need at least 3");
  }
}

Roster Roster::make(std::vector<AgentProfile> agents) {
  validate_roster(agents);
  return Roster(std::move(agents));
}

const AgentProfile& Roster::find(std::string_view name) const {
  for (const auto& a : agents_) {
    if (a.name == name) return a;
  }
  throw ValidationError("no agent named '" + std::string(name) + "' in roster");
}

const AgentProfile& Roster::economist() const {
  return *std::find_if(agents_.begin(), agents_.end(),
                       [](const AgentProfile& a) { return a.role == Role::Economist; });
}

const AgentProfile& Roster::legal_expert() const {
  return *std::find_if(agents_.begin(), agents_.end(),
                       [](const AgentProfile& a) { return a.role == Role::LegalExpert; });
}

const AgentProfile* Roster::chair() const {
  for (const auto& a : agents_) {
    if (a.role == Role::Chair) return &a;
  }
  return nullptr;
}

const AgentProfile* Roster::vice_chair() const {
  for (const auto& a : agents_) {
    if (a.role == Role::ViceChair) return &a;
  }
  return nullptr;
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& v = j.at(key);
  if (v.is_string()) return {v.get<std::string>()};
  return v.get<std::vector<std::string>>();
}

AgentProfile profile_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("agent record must be an object");
  AgentProfile p;
  p.name = j.at("name").get<std::string>();
  p.full_name = j.value("full_name", "");
  p.title = j.value("title", "");
  p.role = parse_role(j.at("role").get<std::string>());
  p.gender = j.value("gender", "");
  p.education = string_list(j, "education");
  p.past_positions = string_list(j, "past_positions");
  p.stance = j.value("stance", "");
  p.personality = j.value("personality", "");
  if (j.contains("initial_viewpoint") && !j.at("initial_viewpoint").is_null()) {
    const auto text = j.at("initial_viewpoint").get<std::string>();
    p.initial_viewpoint = parse_direction(text);
    if (!p.initial_viewpoint) {
      throw ParseError("agent '" + p.name + "': invalid initial_viewpoint '" + text + "'");
    }
  }
  return p;
}

std::string viewpoint_sentence(std::optional<VoteDirection> v) {
  if (!v) return "";
  switch (*v) {
    case VoteDirection::Increase: return " Viewpoint: Raise interest rates.";
    case VoteDirection::Maintain: return " Viewpoint: Keep interest rates unchanged.";
    case VoteDirection::Decrease: return " Viewpoint: Lower interest rates.";
  }
  return "";
}

}  // namespace

Roster roster_from_json(const json& j) {
  if (!j.is_object() || !j.contains("agents") || !j.at("agents").is_array()) {
    throw ParseError("roster must be an object with an \"agents\" array");
  }
  std::vector<AgentProfile> agents;
  try {
    for (const auto& a : j.at("agents")) agents.push_back(profile_from_json(a));
  } catch (const json::exception& e) {
    throw ParseError(std::string("roster: ") + e.what());
  }
  return Roster::make(std::move(agents));
}

json roster_to_json(const Roster& roster) {
  json agents = json::array();
  for (const auto& a : roster.agents()) {
    json r;
    r["name"] = a.name;
    if (!a.full_name.empty()) r["full_name"] = a.full_name;
    if (!a.title.empty()) r["title"] = a.title;
    r["role"] = std::string(to_string(a.role));
    r["gender"] = a.gender;
    r["education"] = a.education;
    r["past_positions"] = a.past_positions;
    r["stance"] = a.stance;
    r["personality"] = a.personality;
    if (a.initial_viewpoint) r["initial_viewpoint"] = std::string(to_string(*a.initial_viewpoint));
    agents.push_back(std::move(r));
  }
  return json{{"agents", std::move(agents)}};
}

Roster load_roster(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("roster " + path.string() + ": " + e.what());
  }
  return roster_from_json(j);
}

std::vector<AgentProfile> voting_agents(const Roster& roster) {
  std::vector<AgentProfile> out;
  for (const auto& a : roster.agents()) {
    if (a.voting()) out.push_back(a);
  }
  return out;
}

std::string render_character_prompt(const AgentProfile& profile, const MeetingDate& date,
                                    PolicyRate current_rate, const TemplateSet& templates) {
  if (profile.voting() && trim(profile.stance).empty()) {
    throw RenderError("stance", "voting agent '" + profile.name + "' has an empty stance");
  }
  if (profile.voting() && trim(profile.personality).empty()) {
    throw RenderError("personality", "voting agent '" + profile.name + "' has an empty personality");
  }
  const TemplateVars vars{
      {"name", profile.display_name()},
      {"short_name", profile.name},
      {"role_title", profile.title.empty() ? std::string(default_title(profile.role)) : profile.title},
      {"meeting_date", date.long_name()},
      {"current_rate", current_rate.percent()},
      {"stance", profile.stance},
      {"gender", profile.gender},
      {"education", join(profile.education, "; ")},
      {"past_positions", join(profile.past_positions, "; ")},
      {"personality", profile.personality},
      {"viewpoint_sentence", viewpoint_sentence(profile.initial_viewpoint)},
  };
  return templates.render(tmpl::kCharacter, vars) + "\n\n" +
         templates.render(tmpl::kSocioDemographic, vars) + "\n\n" +
         templates.render(tmpl::kPersonality, vars);
}

}  // namespace fedsim
