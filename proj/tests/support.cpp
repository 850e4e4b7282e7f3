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


#include "support.hpp"

#include "fedsim/config.hpp"

namespace fedsim::testing {

const TemplateSet& templates() {
  static const TemplateSet set = TemplateSet::load(data_dir() / "templates");
  return set;
}

const StopWords& stopwords() {
  static const StopWords words = StopWords::load(data_dir() / "stopwords.txt");
  return words;
}

AgentProfile voter(std::string name, Role role) {
  AgentProfile p;
  p.name = std::move(name);
  p.role = role;
  p.gender = "Female";
  p.education = {"Ph.D. in Economics"};
  p.past_positions = {"Research director"};
  p.stance = "Balanced between inflation and employment risks.";
  p.personality = "Measured.";
  return p;
}

AgentProfile economist(std::string name) {
  auto p = voter(std::move(name), Role::Economist);
  p.stance.clear();
  return p;
}

AgentProfile legal(std::string name) {
  auto p = voter(std::move(name), Role::LegalExpert);
  p.stance.clear();
  return p;
}

Roster small_roster(int voters) {
  std::vector<AgentProfile> agents;
  for (int i = 1; i <= voters; ++i) {
    if (i == 1) {
      agents.push_back(voter("Chair", Role::Chair));
    } else if (i == 2) {
      agents.push_back(voter("Vice", Role::ViceChair));
    } else {
      agents.push_back(voter("V" + std::to_string(i), Role::Governor));
    }
  }
  agents.push_back(economist());
  agents.push_back(legal());
  return Roster::make(std::move(agents));
}

MaterialDoc small_doc(MeetingDate date) {
  return MaterialDoc::make(
      MaterialKind::BeigeBook, date,
      {{"Cleveland", "Automobile dealers reported steady demand supported by incentives."},
       {"Dallas", "Energy activity expanded as drilling rigs returned to the basin."}});
}

MeetingConfig small_config(int voters, std::uint64_t seed, int turns_per_voter) {
  return MeetingConfig{{2018, 5}, PolicyRate(150), small_roster(voters), {small_doc()},
                       seed,      turns_per_voter,  false};
}

Script small_script(const MeetingConfig& config, VoteDirection stance, char vote) {
  Script s;
  s.default_reply = "Completed";
  const int setup = 1 + static_cast<int>(config.materials.size());  // cleanse + one chunk per doc
  const auto& econ = config.roster.economist();
  const auto& law = config.roster.legal_expert();
  s.replies[{econ.name, setup + 1}] =
      "Proposals follow.\nALT A: 1.75% | INCREASE | Tighten.\nALT B: 1.50% | MAINTAIN | Wait.\n"
      "ALT C: 1.25% | DECREASE | Support growth.";
  s.replies[{law.name, setup + 1}] =
      "Alternative A is lawful. Alternative B is lawful. Alternative C is lawful.";
  const std::string kw(to_keyword(stance));
  for (const auto& v : voting_agents(config.roster)) {
    int turn = setup + 1;
    s.replies[{v.name, turn++}] = "Secret reasoning of " + v.name + " #" + std::to_string(config.seed) +
                                  "\nSTANCE: " + kw;
    s.replies[{v.name, turn++}] = "Opening remarks of " + v.name + "\nSTANCE: " + kw;
    for (int t = 0; t < config.turns_per_voter; ++t) {
      s.replies[{v.name, turn++}] =
          "Debate remark " + std::to_string(t + 1) + " of " + v.name + "\nSTANCE: " + kw;
    }
    s.replies[{v.name, turn++}] = std::string("VOTE: ") + vote;
  }
  return s;
}

namespace {
const RunConfig& fixture_run_config() {
  static const RunConfig c = load_run_config(fixtures_dir() / "campaign-2018.json");
  return c;
}
}  // namespace

MeetingConfig fixture_meeting(const std::string& date) {
  const auto& c = fixture_run_config();
  return build_meeting_config(c, c.meeting(MeetingDate::parse(date)));
}

Script fixture_script(const std::string& date) {
  return Script::load(fixtures_dir() / "scripts" / (date + ".json"));
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::path(FEDSIM_BINARY_DIR) / "test-tmp" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fedsim::testing
