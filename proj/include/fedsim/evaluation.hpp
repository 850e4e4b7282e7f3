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

// Scoring simulated meetings against real decisions.
//
// Rates stay in integer basis points throughout; every metric is kept as an
// exact ratio of integers and only converted to floating point for display.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedsim/engine.hpp"
#include "fedsim/error.hpp"
#include "fedsim/types.hpp"

namespace fedsim {

/// Meeting dates of simulated and real records do not line up.
class PairingError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

struct MemberDirection {
  std::string name;
  VoteDirection direction = VoteDirection::Maintain;
  bool operator==(const MemberDirection&) const = default;
};

/// Ordered (name, direction) list with lookup by name.
class MemberVotes {
 public:
  MemberVotes() = default;
  explicit MemberVotes(std::vector<MemberDirection> votes);

  const std::vector<MemberDirection>& all() const { return votes_; }
  std::optional<VoteDirection> find(std::string_view name) const;
  bool empty() const { return votes_.empty(); }
  std::size_t size() const { return votes_.size(); }
  bool operator==(const MemberVotes&) const = default;

 private:
  std::vector<MemberDirection> votes_;
};

struct GroundTruthRecord {
  MeetingDate date;
  PolicyRate prev_rate;
  PolicyRate new_rate;
  MemberVotes member_votes;

  /// Throws ValidationError.
  void validate() const;
};

struct SimulationRecord {
  MeetingDate date;
  PolicyRate prev_rate;
  PolicyRate new_rate;
  MemberVotes member_votes;  // direction of each voter's chosen alternative
  MemberVotes initial_ideas;  // stage-2 private ideas, when known
  std::optional<VoteDirection> decided_direction;

  void validate() const;
};

/// Builds a record from a finished meeting. Throws EvaluationError if the
/// meeting has no decision.
SimulationRecord simulation_record(const MeetingOutcome& outcome);

/// Published per-agent alignment rates, in percent, used to flag discrepancies.
using PublishedRates = std::map<std::string, double>;

struct GroundTruth {
  std::vector<GroundTruthRecord> meetings;
  PublishedRates published_alignment;
};

/// {"schema_version": 1, "meetings": [...], "published_alignment_percent": {...}}
GroundTruth ground_truth_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GroundTruth& truth);
/// Throws EvaluationError when the file is missing or malformed.
GroundTruth load_ground_truth(const std::filesystem::path& path);

/// Exact non-negative ratio.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// Percent with one decimal, rounded half up in integer arithmetic: "85.7%".
  std::string percent_1dp() const;
  bool operator==(const Fraction&) const = default;
};

int alignment_indicator(VoteDirection sim, VoteDirection real);

struct AgentAlignment {
  std::string agent;
  Fraction rate;  // aligned / participations
  std::optional<double> published_percent;
  bool discrepancy = false;  // published value differs from the recomputed one
};

/// Mean indicator over meetings where the agent appears in both records of a
/// date-matched pair. Throws EvaluationError when there are none.
AgentAlignment alignment_rate(const std::string& agent, std::span<const SimulationRecord> sims,
                              std::span<const GroundTruthRecord> truths);

/// (sim new rate - real new rate) in basis points. Throws PairingError on a date mismatch.
int rate_gap_bp(const SimulationRecord& sim, const GroundTruthRecord& truth);
/// Same in percentage points.
double rate_gap(const SimulationRecord& sim, const GroundTruthRecord& truth);

struct MseResult {
  std::int64_t sum_squared_bp = 0;  // sum of squared gaps in bp^2
  std::int64_t meetings = 0;
  /// Squared percentage points: sum / (n * 100^2).
  Fraction squared_pp() const { return {sum_squared_bp, meetings * 10'000}; }
  double value() const { return squared_pp().value(); }
  /// Three significant figures: 0.015625 -> "0.0156".
  std::string display() const;
};

struct Pairing {
  std::vector<std::pair<const SimulationRecord*, const GroundTruthRecord*>> pairs;
  std::vector<MeetingDate> unpaired_sims;
  std::vector<MeetingDate> unpaired_truths;
};

/// Matches records by meeting date. Throws PairingError for duplicate dates.
Pairing pair_records(std::span<const SimulationRecord> sims, std::span<const GroundTruthRecord> truths);

/// Throws PairingError when nothing pairs.
MseResult mse(std::span<const SimulationRecord> sims, std::span<const GroundTruthRecord> truths);
/// Fraction of paired meetings whose decided rates are identical.
Fraction agreement_rate(std::span<const SimulationRecord> sims,
                        std::span<const GroundTruthRecord> truths);

struct MeetingRow {
  MeetingDate date;
  PolicyRate sim_prev, sim_new, real_prev, real_new;
  int gap_bp = 0;
  struct Member {
    std::string name;
    std::optional<VoteDirection> initial;
    std::optional<VoteDirection> final_vote;
    VoteDirection real = VoteDirection::Maintain;
  };
  std::vector<Member> members;
};

struct EvaluationReport {
  std::vector<AgentAlignment> alignment;  // in order of first appearance in the truth records
  std::vector<MeetingRow> meetings;       // in date order
  MseResult mse;
  Fraction agreement;
  std::vector<std::string> warnings;  // unpaired meetings, published-rate discrepancies
};

/// Pairs records, excluding unpaired ones with a warning. Throws PairingError
/// when nothing pairs.
EvaluationReport build_report(std::span<const SimulationRecord> sims, const GroundTruth& truth);

std::string render_text(const EvaluationReport& report);
nlohmann::json to_json(const EvaluationReport& report);

}  // namespace fedsim
