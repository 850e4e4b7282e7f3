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


#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fedsim/evaluation.hpp"
#include "support.hpp"

using namespace fedsim;
using nlohmann::json;

namespace {

using D = VoteDirection;

MemberVotes votes(std::initializer_list<std::pair<const char*, D>> v) {
  std::vector<MemberDirection> out;
  for (const auto& [n, d] : v) out.push_back({n, d});
  return MemberVotes(std::move(out));
}

SimulationRecord sim(const char* date, int prev, int next, MemberVotes v) {
  SimulationRecord s;
  s.date = MeetingDate::parse(date);
  s.prev_rate = PolicyRate(prev);
  s.new_rate = PolicyRate(next);
  s.member_votes = std::move(v);
  return s;
}

GroundTruthRecord real(const char* date, int prev, int next, MemberVotes v) {
  return {MeetingDate::parse(date), PolicyRate(prev), PolicyRate(next), std::move(v)};
}

// Rate transitions transcribed from the published meeting-result table, in bp.
struct Row {
  const char* date;
  int sim_prev, sim_new, real_prev, real_new;
};
constexpr Row kPublishedRates[] = {
    {"2018-01", 125, 150, 125, 125}, {"2018-03", 125, 150, 125, 150}, {"2018-05", 150, 150, 150, 150},
    {"2018-06", 150, 175, 150, 175}, {"2018-07", 175, 175, 175, 175}, {"2018-09", 175, 175, 175, 200},
    {"2018-11", 200, 200, 200, 200}, {"2018-12", 200, 225, 200, 225},
};

std::pair<std::vector<SimulationRecord>, std::vector<GroundTruthRecord>> table2_records() {
  std::vector<SimulationRecord> sims;
  std::vector<GroundTruthRecord> truths;
  for (const auto& r : kPublishedRates) {
    sims.push_back(sim(r.date, r.sim_prev, r.sim_new, votes({{"X", D::Maintain}})));
    truths.push_back(real(r.date, r.real_prev, r.real_new, votes({{"X", D::Maintain}})));
  }
  return {sims, truths};
}

}  // namespace

TEST_CASE("percent_1dp rounds half up") {
  CHECK(Fraction{6, 7}.percent_1dp() == "85.7%");
  CHECK(Fraction{7, 8}.percent_1dp() == "87.5%");
  CHECK(Fraction{4, 8}.percent_1dp() == "50.0%");
  CHECK(Fraction{3, 8}.percent_1dp() == "37.5%");
  CHECK(Fraction{6, 8}.percent_1dp() == "75.0%");
  CHECK(Fraction{1, 1}.percent_1dp() == "100.0%");
  CHECK(Fraction{0, 5}.percent_1dp() == "0.0%");
  CHECK(Fraction{1, 16}.percent_1dp() == "6.3%");   // 6.25 rounds up
  CHECK(Fraction{1, 80}.percent_1dp() == "1.3%");   // 1.25 rounds up
  CHECK(Fraction{2, 3}.percent_1dp() == "66.7%");
  // Oracle: floor of tenths of a percent, bumped when the remainder is at least half.
  for (std::int64_t den = 1; den <= 64; ++den) {
    for (std::int64_t num = 0; num <= den; ++num) {
      std::int64_t tenths = 1000 * num / den;
      const std::int64_t rem = 1000 * num - tenths * den;
      if (2 * rem >= den) ++tenths;
      const std::string expected = std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
      CAPTURE(num);
      CAPTURE(den);
      CHECK(Fraction{num, den}.percent_1dp() == expected);
    }
  }
}

TEST_CASE("alignment rate counts matching directions over shared meetings") {
  const std::vector<SimulationRecord> sims = {
      sim("2018-01", 125, 150, votes({{"P", D::Increase}, {"D", D::Maintain}})),
      sim("2018-03", 125, 150, votes({{"P", D::Increase}, {"D", D::Increase}})),
      sim("2018-05", 150, 150, votes({{"P", D::Maintain}})),
  };
  const std::vector<GroundTruthRecord> truths = {
      real("2018-01", 125, 125, votes({{"P", D::Maintain}, {"D", D::Maintain}})),
      real("2018-03", 125, 150, votes({{"P", D::Increase}, {"D", D::Increase}})),
      real("2018-05", 150, 150, votes({{"P", D::Maintain}, {"D", D::Maintain}})),
  };
  CHECK(alignment_rate("P", sims, truths).rate == Fraction{2, 3});
  CHECK(alignment_rate("D", sims, truths).rate == Fraction{2, 2});
  CHECK_THROWS_AS(alignment_rate("Q", sims, truths), EvaluationError);
  CHECK(alignment_indicator(D::Increase, D::Increase) == 1);
  CHECK(alignment_indicator(D::Increase, D::Maintain) == 0);
}

TEST_CASE("rate gap") {
  const auto s = sim("2018-01", 125, 150, votes({{"X", D::Increase}}));
  const auto r = real("2018-01", 125, 125, votes({{"X", D::Maintain}}));
  CHECK(rate_gap_bp(s, r) == 25);
  CHECK(rate_gap(s, r) == doctest::Approx(0.25));
  const auto other = real("2018-03", 125, 125, votes({{"X", D::Maintain}}));
  CHECK_THROWS_AS(rate_gap_bp(s, other), PairingError);
}

TEST_CASE("MSE and agreement over the published meeting results") {
  const auto [sims, truths] = table2_records();
  std::vector<int> gaps;
  for (std::size_t i = 0; i < sims.size(); ++i) gaps.push_back(rate_gap_bp(sims[i], truths[i]));
  CHECK(gaps == std::vector<int>{25, 0, 0, 0, 0, -25, 0, 0});

  const auto m = mse(sims, truths);
  CHECK(m.sum_squared_bp == 1250);
  CHECK(m.meetings == 8);
  // Oracle: mean of squared gaps in percentage points, in floating point.
  double acc = 0;
  for (int g : gaps) acc += (g / 100.0) * (g / 100.0);
  CHECK(m.value() == doctest::Approx(acc / 8).epsilon(1e-12));
  CHECK(m.value() == 0.015625);
  CHECK(m.display() == "0.0156");

  const auto a = agreement_rate(sims, truths);
  CHECK(a == Fraction{6, 8});
  CHECK(a.value() == 0.75);
}

TEST_CASE("MSE edge cases") {
  const auto one = std::vector<SimulationRecord>{sim("2018-01", 125, 150, votes({{"X", D::Increase}}))};
  const auto truth = std::vector<GroundTruthRecord>{real("2018-01", 125, 125, votes({{"X", D::Maintain}}))};
  CHECK(mse(one, truth).value() == 0.0625);
  const auto same = std::vector<GroundTruthRecord>{real("2018-01", 125, 150, votes({{"X", D::Maintain}}))};
  CHECK(mse(one, same).value() == 0.0);
  CHECK(agreement_rate(one, same) == Fraction{1, 1});
  const auto elsewhere = std::vector<GroundTruthRecord>{real("2018-05", 150, 150, votes({{"X", D::Maintain}}))};
  CHECK_THROWS_AS(mse(one, elsewhere), PairingError);
  CHECK_THROWS_AS(agreement_rate(one, elsewhere), PairingError);
}

TEST_CASE("pairing rejects duplicates and reports unpaired dates") {
  const auto [sims, truths] = table2_records();
  auto extra = sims;
  extra.push_back(sim("2019-01", 225, 225, votes({{"X", D::Maintain}})));
  const auto p = pair_records(extra, truths);
  CHECK(p.pairs.size() == 8);
  CHECK(p.unpaired_sims == std::vector<MeetingDate>{{2019, 1}});
  auto dup = sims;
  dup.push_back(sims.front());
  CHECK_THROWS_AS(pair_records(dup, truths), PairingError);

  GroundTruth gt{truths, {}};
  const auto report = build_report(extra, gt);
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].find("2019-01") != std::string::npos);
  CHECK(report.mse.meetings == 8);
}

TEST_CASE("comparing the ground truth with itself") {
  const auto gt = load_ground_truth(testing::fixtures_dir() / "ground_truth_2018.json");
  std::vector<SimulationRecord> sims;
  for (const auto& t : gt.meetings) {
    SimulationRecord s;
    s.date = t.date;
    s.prev_rate = t.prev_rate;
    s.new_rate = t.new_rate;
    s.member_votes = t.member_votes;
    sims.push_back(s);
  }
  GroundTruth no_published{gt.meetings, {}};
  const auto report = build_report(sims, no_published);
  CHECK(report.mse.value() == 0.0);
  CHECK(report.agreement == Fraction{8, 8});
  for (const auto& a : report.alignment) CHECK(a.rate.num == a.rate.den);
  CHECK(report.warnings.empty());
}

TEST_CASE("the shipped ground truth matches the published rate table") {
  const auto gt = load_ground_truth(testing::fixtures_dir() / "ground_truth_2018.json");
  REQUIRE(gt.meetings.size() == std::size(kPublishedRates));
  for (std::size_t i = 0; i < gt.meetings.size(); ++i) {
    CHECK(gt.meetings[i].date == MeetingDate::parse(kPublishedRates[i].date));
    CHECK(gt.meetings[i].prev_rate.basis_points() == kPublishedRates[i].real_prev);
    CHECK(gt.meetings[i].new_rate.basis_points() == kPublishedRates[i].real_new);
    CHECK(gt.meetings[i].member_votes.size() == 5);
  }
  CHECK(gt.published_alignment.at("J. Powell") == 85.7);
  CHECK(gt.published_alignment.at("J. Yellen") == 0.0);
  CHECK(ground_truth_from_json(to_json(gt)).meetings.size() == 8);
}

TEST_CASE("malformed ground truth") {
  const auto base = R"({"schema_version": 1, "meetings": [{"date": "2018-01", "prev_rate": "1.25%",
      "new_rate": "1.25%", "members": [{"name": "A", "direction": "maintain"}]}]})";
  CHECK_NOTHROW(ground_truth_from_json(json::parse(base)));
  auto j = json::parse(base);
  j["meetings"][0]["new_rate"] = "2.00%";
  CHECK_THROWS_AS(ground_truth_from_json(j), Error);
  j = json::parse(base);
  j["meetings"][0]["members"] = json::array();
  CHECK_THROWS_AS(ground_truth_from_json(j), Error);
  j = json::parse(base);
  j["meetings"][0]["members"][0]["direction"] = "up";
  CHECK_THROWS_AS(ground_truth_from_json(j), Error);
  j = json::parse(base);
  j["schema_version"] = 7;
  CHECK_THROWS_AS(ground_truth_from_json(j), Error);
  CHECK_THROWS_AS(load_ground_truth(testing::temp_dir("gt") / "missing.json"), Error);
  CHECK_THROWS_AS(MemberVotes({{"A", D::Maintain}, {"A", D::Increase}}), ValidationError);
}

TEST_CASE("the report does not depend on record order") {
  const auto gt = load_ground_truth(testing::fixtures_dir() / "ground_truth_2018.json");
  auto [sims, truths] = table2_records();
  for (std::size_t i = 0; i < sims.size(); ++i) sims[i].member_votes = gt.meetings[i].member_votes;
  const auto baseline = render_text(build_report(sims, gt));
  Rng rng(3);
  for (int round = 0; round < 20; ++round) {
    shuffle(sims, rng);
    auto shuffled_gt = gt;
    shuffle(shuffled_gt.meetings, rng);
    CHECK(render_text(build_report(sims, shuffled_gt)) == baseline);
    CHECK(to_json(build_report(sims, shuffled_gt)) == to_json(build_report(sims, gt)));
  }
}

TEST_CASE("simulation records take each voter's chosen alternative direction") {
  auto config = testing::small_config(5, 3);
  Script script = testing::small_script(config, VoteDirection::Increase, 'A');
  script.replies[{"V4", 8}] = "VOTE: C";
  ScriptedBackend backend(script);
  const auto o = run_meeting(config, backend, testing::templates(), testing::stopwords());
  const auto rec = simulation_record(o);
  CHECK(rec.date == MeetingDate{2018, 5});
  CHECK(rec.prev_rate.basis_points() == 150);
  CHECK(rec.new_rate.basis_points() == 175);
  CHECK(rec.member_votes.size() == 5);
  for (const auto& v : o.final_votes) {
    CHECK(*rec.member_votes.find(v.agent_name) == o.alternatives->at(v.choice).direction);
  }
  CHECK(*rec.member_votes.find("V4") == VoteDirection::Decrease);
  CHECK(*rec.initial_ideas.find("V4") == VoteDirection::Increase);
  CHECK(*rec.decided_direction == VoteDirection::Increase);
  CHECK_NOTHROW(rec.validate());
}

TEST_CASE("text report layout") {
  const auto gt = load_ground_truth(testing::fixtures_dir() / "ground_truth_2018.json");
  auto [sims, truths] = table2_records();
  for (std::size_t i = 0; i < sims.size(); ++i) sims[i].member_votes = gt.meetings[i].member_votes;
  const auto text = render_text(build_report(sims, gt));
  CHECK(text.find("1.25% → 1.5%") != std::string::npos);
  CHECK(text.find("MSE: 0.0156") != std::string::npos);
  CHECK(text.find("Agreement: 6/8 = 75.0%") != std::string::npos);
  CHECK(text.find("Sep. 2018") != std::string::npos);
  CHECK(text.find("-0.25%") != std::string::npos);
}
