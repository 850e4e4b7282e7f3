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

#include "fedsim/engine.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "fedsim/error.hpp"
#include "fedsim/text.hpp"

namespace fedsim {

namespace {

constexpr std::array<std::pair<Stage, std::string_view>, 10> kStageNames = {{
    {Stage::Cleanse, "cleanse"},
    {Stage::Materials, "materials"},
    {Stage::Probe, "probe"},
    {Stage::Alternatives, "alternatives"},
    {Stage::PrivateIdea, "private_idea"},
    {Stage::FirstRound, "first_round"},
    {Stage::Debate, "debate"},
    {Stage::LegalReview, "legal_review"},
    {Stage::Vote, "vote"},
    {Stage::Tally, "tally"},
}};

constexpr std::array<std::pair<TieBreak, std::string_view>, 4> kTieBreakNames = {{
    {TieBreak::None, "none"},
    {TieBreak::Chair, "chair"},
    {TieBreak::ViceChair, "vice_chair"},
    {TieBreak::LabelOrder, "label_order"},
}};

const std::string kSystem = "system";

std::string quote(const std::string& speaker, const std::string& text) {
  return "[" + speaker + "]: " + text;
}

}  // namespace

std::string_view to_string(Stage s) {
  for (const auto& [stage, name] : kStageNames) {
    if (stage == s) return name;
  }
  return "unknown";
}

Stage parse_stage(std::string_view text) {
  for (const auto& [stage, name] : kStageNames) {
    if (name == text) return stage;
  }
  throw ParseError("unknown stage '" + std::string(text) + "'");
}

std::string_view to_string(TieBreak t) {
  for (const auto& [tb, name] : kTieBreakNames) {
    if (tb == t) return name;
  }
  return "none";
}

TieBreak parse_tie_break(std::string_view text) {
  for (const auto& [tb, name] : kTieBreakNames) {
    if (name == text) return tb;
  }
  throw ParseError("unknown tie break '" + std::string(text) + "'");
}

TallyResult tally(std::span<const Vote> votes, const std::string* chair_name,
                  const std::string* vice_chair_name) {
  TallyResult result;
  for (auto label : kAltLabels) result.counts[label] = 0;
  for (const auto& v : votes) ++result.counts[v.choice];

  int top = 0;
  for (const auto& [label, n] : result.counts) top = std::max(top, n);
  std::vector<AltLabel> leaders;
  for (const auto& [label, n] : result.counts) {
    if (n == top) leaders.push_back(label);
  }
  if (leaders.size() == 1) {
    result.winner = leaders.front();
    return result;
  }

  const auto choice_of = [&](const std::string* name) -> std::optional<AltLabel> {
    if (name == nullptr) return std::nullopt;
    for (const auto& v : votes) {
      if (v.agent_name == *name) return v.choice;
    }
    return std::nullopt;
  };
  const auto among_leaders = [&](std::optional<AltLabel> l) {
    return l && std::find(leaders.begin(), leaders.end(), *l) != leaders.end();
  };

  if (const auto c = choice_of(chair_name); among_leaders(c)) {
    result.winner = *c;
    result.tie_break = TieBreak::Chair;
  } else if (const auto vc = choice_of(vice_chair_name); among_leaders(vc)) {
    result.winner = *vc;
    result.tie_break = TieBreak::ViceChair;
  } else {
    result.winner = leaders.front();
    result.tie_break = TieBreak::LabelOrder;
  }
  return result;
}

TallyResult tally(std::span<const Vote> votes, const Roster& roster) {
  const auto* chair = roster.chair();
  const auto* vice = roster.vice_chair();
  return tally(votes, chair ? &chair->name : nullptr, vice ? &vice->name : nullptr);
}

bool has_adjacent_repeat(const std::vector<std::string>& order) {
  return std::adjacent_find(order.begin(), order.end()) != order.end();
}

DebateSchedule make_debate_schedule(const std::vector<std::string>& voters, int turns_per_voter,
                                    Rng& rng, bool avoid_repeats, int max_attempts) {
  if (voters.empty()) throw std::invalid_argument("debate needs at least one voter");
  if (turns_per_voter < 1) throw std::invalid_argument("turns_per_voter must be >= 1");
  std::vector<std::string> pool;
  pool.reserve(voters.size() * static_cast<std::size_t>(turns_per_voter));
  for (int t = 0; t < turns_per_voter; ++t) {
    pool.insert(pool.end(), voters.begin(), voters.end());
  }

  DebateSchedule schedule;
  // A single voter can never avoid repeating once they speak twice.
  const bool repeat_free_possible = voters.size() > 1 || turns_per_voter == 1;
  const int limit = avoid_repeats && repeat_free_possible ? std::max(1, max_attempts) : 1;
  do {
    schedule.order = pool;
    shuffle(schedule.order, rng);
    ++schedule.attempts;
    schedule.has_adjacent_repeat = has_adjacent_repeat(schedule.order);
  } while (schedule.has_adjacent_repeat && schedule.attempts < limit);
  return schedule;
}

void MeetingConfig::validate() const {
  if (turns_per_voter < 1) throw ConfigError("turns_per_voter must be at least 1");
  if (materials.empty()) throw ConfigError("meeting " + date.iso() + " has no materials");
}

int expected_send_count(int agents, int voters, int turns_per_voter, int chunks_per_agent) {
  return agents * (1 + chunks_per_agent) + 1 + voters * (3 + turns_per_voter) + 1;
}

Meeting::Meeting(MeetingConfig config, ChatBackend& backend, const TemplateSet& templates,
                 const StopWords& stopwords, EngineOptions options, LogFn log)
    : config_(std::move(config)),
      backend_(backend),
      templates_(templates),
      stopwords_(stopwords),
      options_(options),
      log_(std::move(log)) {
  config_.validate();
  outcome_.date = config_.date;
  outcome_.current_rate = config_.current_rate;
  outcome_.seed = config_.seed;
  outcome_.turns_per_voter = config_.turns_per_voter;
  outcome_.probe_enabled = config_.probe_enabled;
  for (const auto& a : config_.roster.agents()) outcome_.participants.push_back({a.name, a.role});
}

std::vector<std::string> Meeting::voter_names() const {
  std::vector<std::string> names;
  for (const auto& a : voting_agents(config_.roster)) names.push_back(a.name);
  return names;
}

void Meeting::require_phase(Phase expected, Stage stage) const {
  if (phase_ != expected) {
    throw std::logic_error("stage " + std::string(to_string(stage)) +
                           " called out of order for meeting " + config_.date.iso());
  }
}

Session& Meeting::session(const std::string& name) { return sessions_.at(name); }

void Meeting::record(TranscriptEvent event) {
  event.turn_index = next_turn_++;
  outcome_.transcript.push_back(std::move(event));
}

void Meeting::refresh_usage() {
  TokenUsage total;
  for (const auto& [name, s] : sessions_) total += s.usage();
  outcome_.token_usage = total;
}

void Meeting::fail(Stage stage, const std::string& message) {
  phase_ = Phase::Failed;
  refresh_usage();
  if (log_) log_("meeting " + config_.date.iso() + " failed in " + std::string(to_string(stage)) +
                 ": " + message);
  throw StageError(stage, message, std::make_shared<const MeetingOutcome>(outcome_));
}

std::string Meeting::format_stance() const { return templates_.text(tmpl::kFormatStance); }

// Sends `prompt`, parses the reply, and on ParseError asks the agent to
// reformat, up to parse_retries times. Every exchange becomes an event.
template <typename T, typename Parse>
T Meeting::ask_structured(Session& s, Stage stage, const std::string& prompt,
                          const std::string& format_instruction, Parse parse,
                          TranscriptEvent base_event) {
  std::string message = prompt;
  for (int attempt = 1;; ++attempt) {
    const std::string sent = compose_user_message(s.staged_context(), message);
    const std::string reply = backend_.send(s, message);
    TranscriptEvent event = base_event;
    event.stage = stage;
    event.speaker = s.agent_name();
    event.prompt = sent;
    event.content = reply;
    event.attempt = attempt;
    try {
      T value = parse(reply, event);
      record(std::move(event));
      return value;
    } catch (const ParseError& e) {
      event.note = std::string("parse error: ") + e.what();
      record(std::move(event));
      if (attempt > options_.parse_retries) {
        fail(stage, "agent '" + s.agent_name() + "' gave no usable reply after " +
                        std::to_string(attempt) + " attempts: " + e.what());
      }
      if (log_) log_("reformat request to " + s.agent_name() + " (" + e.what() + ")");
      message = templates_.render(tmpl::kReformat,
                                  {{"problem", e.what()}, {"format_instruction", format_instruction}});
    }
  }
}

namespace {

// Runs `body`, converting library errors other than StageError into a stage failure.
template <typename F>
auto guarded(Stage stage, F body, const std::function<void(Stage, const std::string&)>& fail) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    fail(stage, e.what());
    throw;  // unreachable; fail() always throws
  }
}

}  // namespace

void Meeting::prepare() {
  require_phase(Phase::Created, Stage::Cleanse);
  const auto on_fail = [this](Stage st, const std::string& m) { fail(st, m); };

  for (const auto& doc : config_.materials) {
    MaterialSummary summary;
    summary.kind = doc.kind();
    summary.sections = static_cast<int>(doc.sections().size());
    summary.characters = static_cast<int>(doc.body().size());
    summary.chunks = static_cast<int>(chunk_document(doc, options_.feed.max_chunk).size());
    outcome_.materials.push_back(summary);
  }

  const MaterialDoc* probe_doc = &config_.materials.front();
  for (const auto& doc : config_.materials) {
    if (doc.kind() == MaterialKind::BeigeBook) {
      probe_doc = &doc;
      break;
    }
  }

  for (const auto& agent : config_.roster.agents()) {
    const auto system_prompt = guarded(
        Stage::Cleanse,
        [&] {
          return render_character_prompt(agent, config_.date, config_.current_rate, templates_);
        },
        on_fail);
    auto [it, inserted] =
        sessions_.emplace(agent.name, backend_.open_session(agent.name, system_prompt));
    Session& s = it->second;
    if (log_) log_("opened session for " + agent.name);

    guarded(
        Stage::Cleanse,
        [&] {
          cleanse_memory(backend_, s, config_.date, templates_,
                         [&](const std::string& prompt, const std::string& reply) {
                           TranscriptEvent e;
                           e.stage = Stage::Cleanse;
                           e.speaker = agent.name;
                           e.prompt = prompt;
                           e.content = reply;
                           record(std::move(e));
                         });
        },
        on_fail);

    for (const auto& doc : config_.materials) {
      const std::string doc_name(display_name(doc.kind()));
      const auto nudge = templates_.render(tmpl::kMaterialsNudge, {{"document_name", doc_name}});
      int part = 0;
      guarded(
          Stage::Materials,
          [&] {
            feed_materials(backend_, s, doc, templates_, options_.feed,
                           [&](const std::string& prompt, const std::string& reply) {
                             TranscriptEvent e;
                             e.stage = Stage::Materials;
                             e.speaker = agent.name;
                             // The material text itself is large and identical
                             // for every agent; keep a fingerprint instead.
                             if (prompt != nudge) {
                               ++part;
                               e.prompt = "[" + doc_name + " part " + std::to_string(part) + ", " +
                                          std::to_string(prompt.size()) + " characters, fnv1a " +
                                          fnv1a_hex(prompt) + "]";
                             } else {
                               e.prompt = prompt;
                             }
                             e.content = reply;
                             record(std::move(e));
                           });
          },
          on_fail);
    }

    if (config_.probe_enabled) {
      Rng rng = make_stream(config_.seed, "probe:" + agent.name);
      const auto result = guarded(
          Stage::Probe,
          [&] {
            return comprehension_probe(
                backend_, s, *probe_doc, rng, templates_, stopwords_, options_.probe,
                [&](const std::string& prompt, const std::string& reply) {
                  TranscriptEvent e;
                  e.stage = Stage::Probe;
                  e.speaker = agent.name;
                  e.prompt = prompt;
                  e.content = reply;
                  e.attempt = static_cast<int>(std::count_if(
                                  outcome_.transcript.begin(), outcome_.transcript.end(),
                                  [&](const TranscriptEvent& t) {
                                    return t.stage == Stage::Probe && t.speaker == agent.name;
                                  })) +
                              1;
                  record(std::move(e));
                });
          },
          on_fail);
      outcome_.transcript.back().note = "district " + result.district + ", score " +
                                        std::to_string(result.score) +
                                        (result.passed ? ", passed" : ", failed");
      outcome_.probes.push_back({agent.name, result});
      if (log_) log_("probe " + agent.name + ": " + outcome_.transcript.back().note);
      if (!result.passed && options_.strict_probe) {
        fail(Stage::Probe, "agent '" + agent.name + "' failed the comprehension probe on " +
                               result.district + " after " + std::to_string(result.attempts) +
                               " attempts");
      }
    }
  }
  phase_ = Phase::Prepared;
}

const AlternativeSet& Meeting::stage1_alternatives() {
  require_phase(Phase::Prepared, Stage::Alternatives);
  const auto on_fail = [this](Stage st, const std::string& m) { fail(st, m); };
  const auto& economist = config_.roster.economist();
  Session& s = session(economist.name);

  const auto format = templates_.render(
      tmpl::kFormatAlternatives,
      {{"max_step", "0.25 percentage points"}, {"current_rate", config_.current_rate.percent()}});
  const auto prompt = templates_.render(tmpl::kAlternatives,
                                        {{"current_rate", config_.current_rate.percent()},
                                         {"meeting_date", config_.date.long_name()},
                                         {"format_instruction", format}});
  auto parsed = guarded(
      Stage::Alternatives,
      [&] {
        return ask_structured<ParsedAlternatives>(
            s, Stage::Alternatives, prompt, format,
            [&](const std::string& reply, TranscriptEvent& e) {
              auto p = parse_alternatives(reply, config_.current_rate);
              if (!p.warnings.empty()) e.note = join(p.warnings, "; ");
              return p;
            });
      },
      on_fail);
  for (const auto& w : parsed.warnings) {
    if (log_) log_("alternatives warning: " + w);
  }
  outcome_.alternatives = parsed.set;
  outcome_.alternative_warnings = parsed.warnings;
  phase_ = Phase::AlternativesDone;
  return *outcome_.alternatives;
}

const std::vector<PrivateIdea>& Meeting::stage2_private_ideas() {
  require_phase(Phase::AlternativesDone, Stage::PrivateIdea);
  const auto on_fail = [this](Stage st, const std::string& m) { fail(st, m); };
  const auto prompt =
      templates_.render(tmpl::kPrivateIdea, {{"format_instruction", format_stance()}});
  for (const auto& name : voter_names()) {
    TranscriptEvent base;
    base.confidential = true;
    std::string reasoning;
    const auto dir = guarded(
        Stage::PrivateIdea,
        [&] {
          return ask_structured<VoteDirection>(
              session(name), Stage::PrivateIdea, prompt, format_stance(),
              [&](const std::string& reply, TranscriptEvent& e) {
                const auto d = parse_stance(reply);
                e.parsed_direction = d;
                reasoning = reply;
                return d;
              },
              base);
        },
        on_fail);
    outcome_.private_ideas.push_back({name, dir, reasoning});
  }
  phase_ = Phase::IdeasDone;
  return outcome_.private_ideas;
}

void Meeting::stage3_first_round() {
  require_phase(Phase::IdeasDone, Stage::FirstRound);
  const auto on_fail = [this](Stage st, const std::string& m) { fail(st, m); };
  auto order = voter_names();
  Rng rng = make_stream(config_.seed, "first_round");
  shuffle(order, rng);
  outcome_.first_round_order = order;

  const auto prompt = templates_.render(
      tmpl::kFirstRound,
      {{"meeting_date", config_.date.long_name()}, {"format_instruction", format_stance()}});
  for (const auto& name : order) {
    std::string speech;
    const auto dir = guarded(
        Stage::FirstRound,
        [&] {
          return ask_structured<VoteDirection>(
              session(name), Stage::FirstRound, prompt, format_stance(),
              [&](const std::string& reply, TranscriptEvent& e) {
                const auto d = parse_stance(reply);
                e.parsed_direction = d;
                speech = reply;
                return d;
              });
        },
        on_fail);
    outcome_.first_round_directions[name] = dir;
    presentations_.emplace_back(name, speech);
  }

  // Everyone hears every other presentation once the round is over.
  for (const auto& name : order) {
    std::vector<std::string> others;
    for (const auto& [speaker, text] : presentations_) {
      if (speaker != name) others.push_back(quote(config_.roster.find(speaker).display_name(), text));
    }
    if (others.empty()) continue;
    session(name).stage_context(guarded(
        Stage::FirstRound,
        [&] {
          return templates_.render(tmpl::kFirstRoundDigest,
                                   {{"presentations", join(others, "\n\n")}});
        },
        on_fail));
  }
  phase_ = Phase::FirstRoundDone;
}

void Meeting::stage4_debate() {
  require_phase(Phase::FirstRoundDone, Stage::Debate);
  const auto on_fail = [this](Stage st, const std::string& m) { fail(st, m); };
  const auto voters = voter_names();
  Rng rng = make_stream(config_.seed, "debate");
  outcome_.debate_schedule =
      make_debate_schedule(voters, config_.turns_per_voter, rng, options_.avoid_repeat_speakers,
                           options_.schedule_max_attempts);
  const auto& order = outcome_.debate_schedule.order;
  if (order.size() != voters.size() * static_cast<std::size_t>(config_.turns_per_voter)) {
    throw std::logic_error("debate schedule length does not match voters x turns");
  }
  if (outcome_.debate_schedule.has_adjacent_repeat && log_) {
    log_("debate schedule for " + config_.date.iso() + " has a speaker twice in a row");
  }

  const auto prompt = templates_.render(tmpl::kSecondRound,
                                        {{"meeting_date", config_.date.long_name()},
                                         {"alternatives", outcome_.alternatives->describe()},
                                         {"format_instruction", format_stance()}});
  for (const auto& name : voters) heard_upto_[name] = 0;

  for (const auto& name : order) {
    Session& s = session(name);
    const auto caught_up = heard_upto_[name];
    std::vector<std::string> missed;
    for (std::size_t i = caught_up; i < utterances_.size(); ++i) {
      missed.push_back(
          quote(config_.roster.find(utterances_[i].first).display_name(), utterances_[i].second));
    }
    TranscriptEvent base;
    base.note = "heard " + std::to_string(missed.size()) + " remarks";
    if (!missed.empty()) {
      s.stage_context(templates_.render(tmpl::kDebateCatchUp,
                                        {{"utterances", join(missed, "\n\n")}}));
    }
    std::string speech;
    const auto dir = guarded(
        Stage::Debate,
        [&] {
          return ask_structured<VoteDirection>(
              s, Stage::Debate, prompt, format_stance(),
              [&](const std::string& reply, TranscriptEvent& e) {
                const auto d = parse_stance(reply);
                e.parsed_direction = d;
                speech = reply;
                return d;
              },
              base);
        },
        on_fail);
    outcome_.final_stances[name] = dir;
    utterances_.emplace_back(name, speech);
    heard_upto_[name] = utterances_.size();
  }

  // Remarks made after a voter's last turn reach them before the vote.
  for (const auto& name : voters) {
    std::vector<std::string> missed;
    for (std::size_t i = heard_upto_[name]; i < utterances_.size(); ++i) {
      missed.push_back(
          quote(config_.roster.find(utterances_[i].first).display_name(), utterances_[i].second));
    }
    if (!missed.empty()) {
      session(name).stage_context(templates_.render(tmpl::kDebateCatchUp,
                                                    {{"utterances", join(missed, "\n\n")}}));
    }
    heard_upto_[name] = utterances_.size();
  }
  phase_ = Phase::DebateDone;
}

void Meeting::stage5_legal_review() {
  require_phase(Phase::DebateDone, Stage::LegalReview);
  const auto on_fail = [this](Stage st, const std::string& m) { fail(st, m); };
  const auto& legal = config_.roster.legal_expert();
  Session& s = session(legal.name);

  std::vector<std::string> discussion;
  for (const auto& [speaker, text] : presentations_) {
    discussion.push_back(quote(config_.roster.find(speaker).display_name(), text));
  }
  for (const auto& [speaker, text] : utterances_) {
    discussion.push_back(quote(config_.roster.find(speaker).display_name(), text));
  }
  s.stage_context(
      templates_.render(tmpl::kMeetingDigest, {{"discussion", join(discussion, "\n\n")}}));

  const auto& format = templates_.text(tmpl::kFormatLegal);
  const auto prompt =
      templates_.render(tmpl::kLegalReview, {{"alternatives", outcome_.alternatives->describe()},
                                             {"format_instruction", format}});
  legal_review_ = guarded(
      Stage::LegalReview,
      [&] {
        return ask_structured<std::string>(
            s, Stage::LegalReview, prompt, format,
            [](const std::string& reply, TranscriptEvent&) {
              std::vector<std::string> missing;
              for (auto label : kAltLabels) {
                if (!contains_icase(reply, "alternative " + to_string(label))) {
                  missing.push_back("Alternative " + to_string(label));
                }
              }
              if (!missing.empty()) {
                throw ParseError("the review does not address " + join(missing, ", "));
              }
              return reply;
            });
      },
      on_fail);

  const auto broadcast = templates_.render(tmpl::kLegalBroadcast, {{"review", legal_review_}});
  for (const auto& name : voter_names()) session(name).stage_context(broadcast);
  phase_ = Phase::LegalReviewDone;
}

const std::vector<Vote>& Meeting::stage5_vote() {
  require_phase(Phase::LegalReviewDone, Stage::Vote);
  const auto on_fail = [this](Stage st, const std::string& m) { fail(st, m); };
  const auto& alts = *outcome_.alternatives;
  const auto& format = templates_.text(tmpl::kFormatVote);
  const auto prompt = templates_.render(
      tmpl::kFinalVote, {{"alternatives", alts.describe()}, {"format_instruction", format}});
  for (const auto& name : voter_names()) {
    const auto choice = guarded(
        Stage::Vote,
        [&] {
          return ask_structured<AltLabel>(
              session(name), Stage::Vote, prompt, format,
              [&](const std::string& reply, TranscriptEvent& e) {
                const auto label = parse_vote(reply, alts);
                e.vote = label;
                e.parsed_direction = alts.at(label).direction;
                return label;
              });
        },
        on_fail);
    outcome_.final_votes.push_back({name, choice});
  }
  phase_ = Phase::VoteDone;
  return outcome_.final_votes;
}

const TallyResult& Meeting::stage5_tally() {
  require_phase(Phase::VoteDone, Stage::Tally);
  const auto result = tally(outcome_.final_votes, config_.roster);
  const auto& decided = outcome_.alternatives->at(result.winner);
  outcome_.tally = result;
  outcome_.decided = result.winner;
  outcome_.decided_rate = decided.target;

  std::vector<std::string> counts;
  for (const auto& [label, n] : result.counts) counts.push_back(to_string(label) + ": " + std::to_string(n));
  TranscriptEvent e;
  e.stage = Stage::Tally;
  e.speaker = kSystem;
  e.content = join(counts, ", ") + ". Decided: Alternative " + to_string(result.winner) + ", " +
              std::string(to_string(decided.direction)) +
              (decided.direction == VoteDirection::Maintain ? " at " : " to ") +
              decided.target.percent() + ".";
  e.vote = result.winner;
  e.parsed_direction = decided.direction;
  e.note = "tie break: " + std::string(to_string(result.tie_break));
  record(std::move(e));

  refresh_usage();
  phase_ = Phase::Tallied;
  if (log_) {
    log_("meeting " + config_.date.iso() + " decided " + to_string(result.winner) + " (" +
         decided.target.percent() + "); tokens " + std::to_string(outcome_.token_usage.total()));
  }
  return *outcome_.tally;
}

const MeetingOutcome& Meeting::run() {
  if (phase_ == Phase::Created) prepare();
  if (phase_ == Phase::Prepared) stage1_alternatives();
  if (phase_ == Phase::AlternativesDone) stage2_private_ideas();
  if (phase_ == Phase::IdeasDone) stage3_first_round();
  if (phase_ == Phase::FirstRoundDone) stage4_debate();
  if (phase_ == Phase::DebateDone) stage5_legal_review();
  if (phase_ == Phase::LegalReviewDone) stage5_vote();
  if (phase_ == Phase::VoteDone) stage5_tally();
  return outcome_;
}

MeetingOutcome run_meeting(MeetingConfig config, ChatBackend& backend, const TemplateSet& templates,
                           const StopWords& stopwords, EngineOptions options, LogFn log) {
  Meeting meeting(std::move(config), backend, templates, stopwords, options, std::move(log));
  return meeting.run();
}

}  // namespace fedsim
