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


#include "doctest.h"
#include "fedsim/error.hpp"
#include "fedsim/structured_output.hpp"

using namespace fedsim;

namespace {

const PolicyRate k150(150);

const char* kMayReply =
    "Here are the alternatives.\n"
    "ALT A: 1.75% | INCREASE | Labor markets are tight.\n"
    "ALT B: 1.50% | MAINTAIN | Inflation is near target.\n"
    "ALT C: 1.25% | DECREASE | Trade risks are rising.\n";

AlternativeSet may_set() { return parse_alternatives(kMayReply, k150).set; }

std::string alt_reply(const std::string& a, const std::string& b, const std::string& c) {
  return "ALT A: " + a + "\nALT B: " + b + "\nALT C: " + c + "\n";
}

}  // namespace

TEST_CASE("alternatives: the documented block") {
  const auto parsed = parse_alternatives(kMayReply, k150);
  CHECK(parsed.warnings.empty());
  const auto& s = parsed.set;
  CHECK(s.at(AltLabel::A).target.basis_points() == 175);
  CHECK(s.at(AltLabel::A).direction == VoteDirection::Increase);
  CHECK(s.at(AltLabel::B).direction == VoteDirection::Maintain);
  CHECK(s.at(AltLabel::C).target.basis_points() == 125);
  CHECK(s.at(AltLabel::C).rationale == "Trade risks are rising.");
  CHECK(s.with_direction(VoteDirection::Maintain).label == AltLabel::B);
  CHECK(s.describe().find("Alternative A: 1.75% (increase). Labor markets are tight.") == 0);
}

TEST_CASE("alternatives: 200 bp current rate, shuffled labels and markdown") {
  const auto parsed = parse_alternatives(
      "**ALT C: 2.25 | increase | up**\n- junk\nALT A) 1.75% | Decrease | down\n`ALT B. 2 | maintain | hold`",
      PolicyRate(200));
  CHECK(parsed.set.at(AltLabel::C).direction == VoteDirection::Increase);
  CHECK(parsed.set.at(AltLabel::A).target.basis_points() == 175);
  CHECK(parsed.set.at(AltLabel::B).target.basis_points() == 200);
}

TEST_CASE("alternatives: the last line for a label wins") {
  const auto parsed = parse_alternatives(
      std::string("ALT A: 2.00% | INCREASE | draft\n") + kMayReply, k150);
  CHECK(parsed.set.at(AltLabel::A).target.basis_points() == 175);
}

TEST_CASE("alternatives: a half-point move is allowed with a warning") {
  const auto parsed = parse_alternatives(
      alt_reply("2.00% | INCREASE | x", "1.50% | MAINTAIN | y", "1.25% | DECREASE | z"), k150);
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].find("50 bp") != std::string::npos);
}

TEST_CASE("alternatives: every documented rejection") {
  const auto rejects = [](const std::string& reply, const char* fragment) {
    CAPTURE(reply);
    CHECK_THROWS_WITH_AS(parse_alternatives(reply, k150), doctest::Contains(fragment), ParseError);
  };
  rejects("I suggest holding rates.", "no 'ALT");
  rejects(alt_reply("1.75% | INCREASE | x", "1.50% | MAINTAIN | y", "1.25% | DECREASE | z") +
              "ALT D: 1.00% | DECREASE | w",
          "unknown alternative label 'D'");
  rejects("ALT A: 1.75% | INCREASE | x\nALT B: 1.50% | MAINTAIN | y", "missing ALT line for alternative C");
  rejects(alt_reply("1.75% INCREASE x", "1.50% | MAINTAIN | y", "1.25% | DECREASE | z"),
          "three '|'-separated fields");
  rejects(alt_reply("high | INCREASE | x", "1.50% | MAINTAIN | y", "1.25% | DECREASE | z"),
          "invalid rate");
  rejects(alt_reply("1.80% | INCREASE | x", "1.50% | MAINTAIN | y", "1.25% | DECREASE | z"),
          "quarter-point");
  rejects(alt_reply("1.75% | UP | x", "1.50% | MAINTAIN | y", "1.25% | DECREASE | z"),
          "unknown direction 'UP'");
  rejects(alt_reply("1.75% | INCREASE | x", "2.00% | INCREASE | y", "1.25% | DECREASE | z"),
          "share the direction INCREASE");
  rejects(alt_reply("1.75% | INCREASE | x", "2.00% | MAINTAIN | y", "1.25% | DECREASE | z"),
          "is labelled MAINTAIN");
  rejects(alt_reply("1.75% | DECREASE | x", "1.50% | MAINTAIN | y", "1.25% | DECREASE | z"),
          "is labelled DECREASE but");
  rejects(alt_reply("2.25% | INCREASE | x", "1.50% | MAINTAIN | y", "1.25% | DECREASE | z"),
          "moves 75 bp");
}

TEST_CASE("AlternativeSet::make invariants") {
  const auto alt = [](AltLabel l, int bp, VoteDirection d) { return Alternative{l, PolicyRate(bp), d, ""}; };
  CHECK_THROWS_AS(AlternativeSet::make({alt(AltLabel::A, 175, VoteDirection::Increase)}, k150),
                  ValidationError);
  CHECK_THROWS_WITH_AS(AlternativeSet::make({alt(AltLabel::A, 175, VoteDirection::Increase),
                                             alt(AltLabel::A, 150, VoteDirection::Maintain),
                                             alt(AltLabel::C, 125, VoteDirection::Decrease)},
                                            k150),
                       doctest::Contains("exactly A, B and C"), ValidationError);
  const auto ok = AlternativeSet::make({alt(AltLabel::C, 125, VoteDirection::Decrease),
                                        alt(AltLabel::A, 175, VoteDirection::Increase),
                                        alt(AltLabel::B, 150, VoteDirection::Maintain)},
                                       k150);
  CHECK(ok.all()[0].label == AltLabel::A);
}

TEST_CASE("stance tags") {
  CHECK(parse_stance("Growth is solid.\nSTANCE: INCREASE") == VoteDirection::Increase);
  CHECK(parse_stance("stance: maintain.") == VoteDirection::Maintain);
  CHECK(parse_stance("**STANCE:** DECREASE") == VoteDirection::Decrease);
  CHECK(parse_stance("STANCE: INCREASE\nOn reflection.\nSTANCE: MAINTAIN") == VoteDirection::Maintain);
  CHECK_THROWS_WITH_AS(parse_stance("I would keep rates where they are."),
                       doctest::Contains("missing 'STANCE"), ParseError);
  CHECK_THROWS_WITH_AS(parse_stance("STANCE: hawkish"), doctest::Contains("unrecognized stance"),
                       ParseError);
  CHECK_THROWS_AS(parse_stance("STANCE:"), ParseError);
  CHECK_THROWS_AS(parse_stance("CIRCUMSTANCE: MAINTAIN"), ParseError);
}

TEST_CASE("votes") {
  const auto s = may_set();
  CHECK(parse_vote("I vote for Alternative B", s) == AltLabel::B);
  CHECK(parse_vote("raise interest rates", s) == AltLabel::A);
  CHECK(parse_vote("We should cut.", s) == AltLabel::C);
  CHECK(parse_vote("After weighing it all.\nVOTE: C", s) == AltLabel::C);
  CHECK(parse_vote("VOTE: Alternative A.", s) == AltLabel::A);
  CHECK(parse_vote("VOTE: keep rates unchanged", s) == AltLabel::B);
  CHECK(parse_vote("B.", s) == AltLabel::B);
  CHECK(parse_vote("B", s) == AltLabel::B);
  CHECK(parse_vote("I support option c", s) == AltLabel::C);
  CHECK(parse_vote("Alternative B, as alternative B keeps policy steady.", s) == AltLabel::B);
}

TEST_CASE("vote rejections") {
  const auto s = may_set();
  const auto rejects = [&](const std::string& reply, const char* fragment) {
    CAPTURE(reply);
    CHECK_THROWS_WITH_AS(parse_vote(reply, s), doctest::Contains(fragment), ParseError);
  };
  rejects("A or B", "several alternatives (A, B)");
  rejects("VOTE: A or C", "several alternatives (A, C)");
  rejects("Either Alternative A or Alternative B would work.", "several alternatives");
  rejects("We could raise or cut.", "several directions");
  rejects("VOTE: undecided", "no recognizable choice");
  rejects("I need more time.", "no recognizable choice");
}

TEST_CASE("vote direction mapping follows the alternative set, not the label") {
  const auto s = parse_alternatives(
      alt_reply("1.25% | DECREASE | x", "1.75% | INCREASE | y", "1.50% | MAINTAIN | z"), k150).set;
  CHECK(parse_vote("raise interest rates", s) == AltLabel::B);
  CHECK(parse_vote("hold steady", s) == AltLabel::C);
  CHECK(parse_vote("lower the rate", s) == AltLabel::A);
}

TEST_CASE("labels") {
  CHECK(parse_label(" b ") == AltLabel::B);
  CHECK_FALSE(parse_label("D").has_value());
  CHECK_FALSE(parse_label("AB").has_value());
  CHECK(to_string(AltLabel::C) == "C");
}
