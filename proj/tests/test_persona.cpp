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


#include <set>

#include "doctest.h"
#include "fedsim/error.hpp"
#include "fedsim/persona.hpp"
#include "fedsim/templates.hpp"
#include "fedsim/text.hpp"
#include "fedsim/types.hpp"
#include "support.hpp"

using namespace fedsim;

TEST_CASE("meeting dates parse and render") {
  const auto d = MeetingDate::parse("2018-09");
  CHECK(d.year == 2018);
  CHECK(d.month == 9);
  CHECK(d.iso() == "2018-09");
  CHECK(d.long_name() == "September 2018");
  CHECK(d.short_name() == "Sep. 2018");
  CHECK(MeetingDate::parse("2018-06").short_name() == "June 2018");
  CHECK_THROWS_AS(MeetingDate::parse("2018-13"), ParseError);
  CHECK_THROWS_AS(MeetingDate::parse("May 2018"), ParseError);
}

TEST_CASE("policy rates are quarter points in basis points") {
  CHECK(PolicyRate::parse_percent("1.50%").basis_points() == 150);
  CHECK(PolicyRate::parse_percent("1.5").basis_points() == 150);
  CHECK(PolicyRate::parse_percent("2").basis_points() == 200);
  CHECK(PolicyRate::parse_percent(" 2.25 % ").basis_points() == 225);
  CHECK(PolicyRate(150).percent() == "1.50%");
  CHECK(PolicyRate(150).percent_short() == "1.5%");
  CHECK(PolicyRate(200).percent_short() == "2.0%");
  CHECK(PolicyRate(125).percent_short() == "1.25%");
  CHECK_THROWS_AS(PolicyRate(130), ValidationError);
  CHECK_THROWS_AS(PolicyRate(-25), ValidationError);
  CHECK_THROWS_AS(PolicyRate::parse_percent("1.33"), ParseError);
  CHECK_THROWS_AS(PolicyRate::parse_percent("abc"), ParseError);
}

TEST_CASE("directions follow the rate comparison") {
  CHECK(direction_between(PolicyRate(200), PolicyRate(225)) == VoteDirection::Increase);
  CHECK(direction_between(PolicyRate(200), PolicyRate(200)) == VoteDirection::Maintain);
  CHECK(direction_between(PolicyRate(200), PolicyRate(175)) == VoteDirection::Decrease);
  CHECK(parse_direction("increase") == VoteDirection::Increase);
  CHECK(parse_direction("MAINTAIN") == VoteDirection::Maintain);
  CHECK_FALSE(parse_direction("sideways").has_value());
  CHECK(format_gap(25) == "0.25%");
  CHECK(format_gap(-25) == "-0.25%");
  CHECK(format_gap(0) == "0");
}

TEST_CASE("render_template substitutes and names unresolved variables") {
  CHECK(render_template("Hi {name}, {name}!", {{"name", "Ann"}}) == "Hi Ann, Ann!");
  CHECK(render_template("JSON {\"a\": 1} and {Upper}", {}) == "JSON {\"a\": 1} and {Upper}");
  try {
    render_template("Color: {favorite_color}", {{"name", "x"}});
    FAIL("expected RenderError");
  } catch (const RenderError& e) {
    CHECK(e.variable() == "favorite_color");
    CHECK(std::string(e.what()).find("favorite_color") != std::string::npos);
  }
  CHECK(template_variables("{a} {b} {a}") == std::set<std::string>{"a", "b"});
}

TEST_CASE("the bundled template set is complete") {
  const auto& t = testing::templates();
  for (auto name : tmpl::required()) CHECK(t.contains(name));
  CHECK(t.checksums().size() == t.all().size());
  const auto dir = testing::temp_dir("templates-missing");
  write_file(dir / "character.txt", "x");
  CHECK_THROWS_AS(TemplateSet::load(dir), ConfigError);
}

TEST_CASE("roster loading enforces the committee shape") {
  const auto powell = load_roster(testing::fixtures_dir() / "rosters" / "roster-powell.json");
  CHECK(powell.agents().size() == 7);
  CHECK(voting_agents(powell).size() == 5);
  CHECK(powell.chair()->name == "J. Powell");
  CHECK(powell.vice_chair()->name == "W. Dudley");
  CHECK(powell.economist().role == Role::Economist);

  auto agents = powell.agents();
  SUBCASE("zero economists") {
    agents.erase(agents.begin() + 5);
    CHECK_THROWS_WITH_AS(Roster::make(agents), doctest::Contains("economist"), ValidationError);
  }
  SUBCASE("two economists") {
    auto extra = agents[5];
    extra.name = "Second Economist";
    agents.push_back(extra);
    CHECK_THROWS_WITH_AS(Roster::make(agents), doctest::Contains("2 economists"), ValidationError);
  }
  SUBCASE("duplicate name") {
    agents[1].name = "J. Powell";
    CHECK_THROWS_WITH_AS(Roster::make(agents), doctest::Contains("J. Powell"), ValidationError);
  }
  SUBCASE("two chairs") {
    agents[1].role = Role::Chair;
    CHECK_THROWS_AS(Roster::make(agents), ValidationError);
  }
  SUBCASE("empty stance for a voter") {
    agents[2].stance = "";
    CHECK_THROWS_AS(Roster::make(agents), ValidationError);
  }
  SUBCASE("too few voters") {
    agents.erase(agents.begin() + 2, agents.begin() + 5);
    CHECK_THROWS_AS(Roster::make(agents), ValidationError);
  }
}

TEST_CASE("malformed roster files are parse errors") {
  const auto dir = testing::temp_dir("roster-bad");
  write_file(dir / "r.json", "{\"agents\": [");
  CHECK_THROWS_AS(load_roster(dir / "r.json"), ParseError);
  write_file(dir / "r2.json", R"({"agents": [{"name": "X", "role": "emperor"}]})");
  CHECK_THROWS_AS(load_roster(dir / "r2.json"), ParseError);
}

TEST_CASE("roster json round-trips") {
  const auto r = load_roster(testing::fixtures_dir() / "rosters" / "roster-yellen.json");
  const auto again = roster_from_json(roster_to_json(r));
  CHECK(roster_to_json(again) == roster_to_json(r));
}

TEST_CASE("voting_agents keeps roster order and drops exactly two") {
  const auto r = testing::small_roster(3);
  const auto v = voting_agents(r);
  REQUIRE(v.size() == 3);
  CHECK(v[0].name == "Chair");
  CHECK(v[1].name == "Vice");
  CHECK(v[2].name == "V3");

  // Random valid rosters: shuffled order, 3..9 voters, support staff anywhere.
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 7));
    auto agents = testing::small_roster(n).agents();
    shuffle(agents, rng);
    const auto roster = Roster::make(agents);
    const auto voters = voting_agents(roster);
    CHECK(voters.size() == roster.agents().size() - 2);
    std::size_t k = 0;
    for (const auto& a : roster.agents()) {
      if (a.voting()) CHECK(voters[k++].name == a.name);
    }
  }
}

TEST_CASE("character prompt opens with the role, name and meeting") {
  const auto r = load_roster(testing::fixtures_dir() / "rosters" / "roster-powell.json");
  const auto& powell = r.find("J. Powell");
  const auto text =
      render_character_prompt(powell, MeetingDate::parse("2018-05"), PolicyRate(150), testing::templates());
  CHECK(text.rfind("You will play the role of Federal Reserve Chairman Jerome H. Powell, "
                   "participating in the May 2018 FOMC meeting",
                   0) == 0);
  CHECK(text.find(powell.stance) != std::string::npos);
  CHECK(text.find(powell.personality) != std::string::npos);
  CHECK(text.find("Gender: Male") != std::string::npos);
  CHECK(text.find(powell.education.front()) != std::string::npos);
  CHECK(text.find(powell.past_positions.front()) != std::string::npos);
  // Character, then socio-demographic, then personality.
  CHECK(text.find("Stance:") < text.find("Gender:"));
  CHECK(text.find("Gender:") < text.find("Personality:"));
  // Deterministic.
  CHECK(text == render_character_prompt(powell, MeetingDate::parse("2018-05"), PolicyRate(150),
                                        testing::templates()));
}

TEST_CASE("initial viewpoint is appended to the personality") {
  auto p = testing::voter("X");
  p.initial_viewpoint = VoteDirection::Maintain;
  const auto text = render_character_prompt(p, {2018, 5}, PolicyRate(150), testing::templates());
  CHECK(text.find("Viewpoint: Keep interest rates unchanged.") != std::string::npos);
}

TEST_CASE("character prompt render errors") {
  auto p = testing::voter("X");
  p.stance = "";
  CHECK_THROWS_AS(render_character_prompt(p, {2018, 5}, PolicyRate(150), testing::templates()),
                  RenderError);

  TemplateSet broken = testing::templates();
  broken.add("personality", "Personality: {personality} {favorite_color}");
  try {
    render_character_prompt(testing::voter("Y"), {2018, 5}, PolicyRate(150), broken);
    FAIL("expected RenderError");
  } catch (const RenderError& e) {
    CHECK(e.variable() == "favorite_color");
  }
}

TEST_CASE("every shipped template variable resolves for every shipped profile") {
  for (const auto* file : {"roster-powell.json", "roster-yellen.json"}) {
    const auto r = load_roster(testing::fixtures_dir() / "rosters" / file);
    for (const auto& a : r.agents()) {
      CHECK_NOTHROW(render_character_prompt(a, {2018, 1}, PolicyRate(125), testing::templates()));
    }
  }
}
