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

// The five-stage committee meeting.
//
// Setup (per agent, roster order): persona system prompt, memory cleanse,
// materials, optional comprehension probe. Then:
//   1. the economist proposes alternatives A/B/C (increase/maintain/decrease);
//   2. each voter forms a private idea that is never shown to anyone else;
//   3. voters present in a random order; afterwards each hears the others;
//   4. a shuffled debate in which every voter speaks `turns_per_voter` times
//      and first hears everything said since their previous turn;
//   5. the legal expert reviews the alternatives, voters hear the review and
//      vote; a plurality tally decides.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedsim/backend.hpp"
#include "fedsim/materials.hpp"
#include "fedsim/persona.hpp"
#include "fedsim/random.hpp"
#include "fedsim/structured_output.hpp"
#include "fedsim/templates.hpp"
#include "fedsim/types.hpp"

namespace fedsim {

enum class Stage {
  Cleanse,
  Materials,
  Probe,
  Alternatives,
  PrivateIdea,
  FirstRound,
  Debate,
  LegalReview,
  Vote,
  Tally
};

std::string_view to_string(Stage s);
Stage parse_stage(std::string_view text);

struct TranscriptEvent {
  Stage stage = Stage::Cleanse;
  std::string speaker;  // agent name or "system"
  int turn_index = 0;   // strictly increasing within a meeting
  std::string prompt;   // user message as sent; materials chunks are summarized
  std::string content;  // reply
  std::optional<VoteDirection> parsed_direction;
  std::optional<AltLabel> vote;
  int attempt = 1;  // > 1 for parse retries
  bool confidential = false;
  std::string note;

  bool operator==(const TranscriptEvent&) const = default;
};

struct PrivateIdea {
  std::string agent_name;
  VoteDirection direction = VoteDirection::Maintain;
  std::string reasoning;
};

struct Vote {
  std::string agent_name;
  AltLabel choice = AltLabel::A;
};

enum class TieBreak { None, Chair, ViceChair, LabelOrder };
std::string_view to_string(TieBreak t);
TieBreak parse_tie_break(std::string_view text);

struct TallyResult {
  std::map<AltLabel, int> counts;  // always holds A, B and C
  AltLabel winner = AltLabel::A;
  TieBreak tie_break = TieBreak::None;
};

/// Plurality. A tie among the top labels goes to the chair's choice if it is
/// among them, else the vice chair's, else the earliest label.
TallyResult tally(std::span<const Vote> votes, const std::string* chair_name,
                  const std::string* vice_chair_name);
TallyResult tally(std::span<const Vote> votes, const Roster& roster);

struct DebateSchedule {
  std::vector<std::string> order;
  bool has_adjacent_repeat = false;
  int attempts = 0;  // shuffles drawn
};

/// Each voter appears exactly `turns_per_voter` times in a uniform shuffle.
/// With `avoid_repeats`, shuffles are redrawn (up to `max_attempts`) until no
/// speaker talks twice in a row; when that cannot happen the last draw is
/// returned with has_adjacent_repeat set.
DebateSchedule make_debate_schedule(const std::vector<std::string>& voters, int turns_per_voter,
                                    Rng& rng, bool avoid_repeats = true, int max_attempts = 1000);

bool has_adjacent_repeat(const std::vector<std::string>& order);

struct MeetingConfig {
  MeetingDate date;
  PolicyRate current_rate;
  Roster roster;
  std::vector<MaterialDoc> materials;
  std::uint64_t seed = 0;
  int turns_per_voter = 3;
  bool probe_enabled = false;

  /// Throws ConfigError.
  void validate() const;
};

struct EngineOptions {
  int parse_retries = 2;
  FeedOptions feed;
  ProbeOptions probe;
  bool strict_probe = false;
  bool avoid_repeat_speakers = true;
  int schedule_max_attempts = 1000;
};

struct Participant {
  std::string name;
  Role role = Role::Governor;
  bool operator==(const Participant&) const = default;
};

struct MaterialSummary {
  MaterialKind kind = MaterialKind::BeigeBook;
  int sections = 0;
  int characters = 0;
  int chunks = 0;
  bool operator==(const MaterialSummary&) const = default;
};

struct AgentProbe {
  std::string agent_name;
  ProbeResult result;
};

struct MeetingOutcome {
  MeetingDate date;
  PolicyRate current_rate;
  std::uint64_t seed = 0;
  int turns_per_voter = 3;
  bool probe_enabled = false;
  std::vector<Participant> participants;
  std::vector<MaterialSummary> materials;

  std::vector<AgentProbe> probes;
  std::optional<AlternativeSet> alternatives;
  std::vector<std::string> alternative_warnings;
  std::vector<PrivateIdea> private_ideas;
  std::vector<std::string> first_round_order;
  std::map<std::string, VoteDirection> first_round_directions;
  DebateSchedule debate_schedule;
  std::map<std::string, VoteDirection> final_stances;  // each voter's last debate stance
  std::vector<Vote> final_votes;
  std::optional<TallyResult> tally;
  std::optional<AltLabel> decided;
  std::optional<PolicyRate> decided_rate;

  std::vector<TranscriptEvent> transcript;
  TokenUsage token_usage;

  const Alternative& decided_alternative() const { return alternatives->at(*decided); }
  bool complete() const { return decided.has_value(); }
};

/// A stage failed irrecoverably. Carries everything recorded up to the failure.
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& message, std::shared_ptr<const MeetingOutcome> partial)
      : Error(std::string(to_string(stage)) + ": " + message),
        stage_(stage),
        partial_(std::move(partial)) {}

  Stage stage() const noexcept { return stage_; }
  const MeetingOutcome& partial() const { return *partial_; }

 private:
  Stage stage_;
  std::shared_ptr<const MeetingOutcome> partial_;
};

/// One meeting as an explicit state machine. Each stage method must be called
/// in order; run() drives all of them. A meeting is strictly sequential.
class Meeting {
 public:
  enum class Phase {
    Created,
    Prepared,
    AlternativesDone,
    IdeasDone,
    FirstRoundDone,
    DebateDone,
    LegalReviewDone,
    VoteDone,
    Tallied,
    Failed
  };

  Meeting(MeetingConfig config, ChatBackend& backend, const TemplateSet& templates,
          const StopWords& stopwords, EngineOptions options = {}, LogFn log = {});

  /// Opens sessions; cleanse, materials and (optional) probe per agent.
  void prepare();
  const AlternativeSet& stage1_alternatives();
  const std::vector<PrivateIdea>& stage2_private_ideas();
  void stage3_first_round();
  void stage4_debate();
  void stage5_legal_review();
  const std::vector<Vote>& stage5_vote();
  const TallyResult& stage5_tally();

  /// Runs every remaining stage. Throws StageError on failure.
  const MeetingOutcome& run();

  Phase phase() const { return phase_; }
  const MeetingOutcome& outcome() const { return outcome_; }
  const MeetingConfig& config() const { return config_; }
  const std::map<std::string, Session>& sessions() const { return sessions_; }
  std::vector<std::string> voter_names() const;

 private:
  void require_phase(Phase expected, Stage stage) const;
  Session& session(const std::string& name);
  void record(TranscriptEvent event);
  [[noreturn]] void fail(Stage stage, const std::string& message);
  void refresh_usage();

  template <typename T, typename Parse>
  T ask_structured(Session& s, Stage stage, const std::string& prompt,
                   const std::string& format_instruction, Parse parse,
                   TranscriptEvent base_event = {});

  std::string format_stance() const;

  MeetingConfig config_;
  ChatBackend& backend_;
  const TemplateSet& templates_;
  const StopWords& stopwords_;
  EngineOptions options_;
  LogFn log_;

  Phase phase_ = Phase::Created;
  std::map<std::string, Session> sessions_;
  MeetingOutcome outcome_;
  int next_turn_ = 0;

  // Debate bookkeeping: first-round presentations and debate utterances, in
  // speaking order.
  std::vector<std::pair<std::string, std::string>> presentations_;
  std::vector<std::pair<std::string, std::string>> utterances_;
  std::map<std::string, std::size_t> heard_upto_;
  std::string legal_review_;
};

/// Convenience wrapper around Meeting::run().
MeetingOutcome run_meeting(MeetingConfig config, ChatBackend& backend, const TemplateSet& templates,
                           const StopWords& stopwords, EngineOptions options = {}, LogFn log = {});

/// Expected number of send() calls for a meeting with no retries and probes off:
/// every agent sends 1 cleanse + `chunks_per_agent`; then 1 alternatives,
/// and per voter 1 idea + 1 presentation + turns_per_voter debate + 1 vote,
/// plus 1 legal review.
int expected_send_count(int agents, int voters, int turns_per_voter, int chunks_per_agent);

}  // namespace fedsim
