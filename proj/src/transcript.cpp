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

#include "fedsim/transcript.hpp"

#include "fedsim/text.hpp"

namespace fedsim {

using nlohmann::json;

namespace {

json direction_json(const std::optional<VoteDirection>& d) {
  return d ? json(std::string(to_string(*d))) : json(nullptr);
}

VoteDirection direction_from(const json& j) {
  const auto d = parse_direction(j.get<std::string>());
  if (!d) throw TranscriptError("unknown direction '" + j.get<std::string>() + "'");
  return *d;
}

std::optional<VoteDirection> opt_direction_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return direction_from(j);
}

AltLabel label_from(const json& j) {
  const auto l = parse_label(j.get<std::string>());
  if (!l) throw TranscriptError("unknown alternative label '" + j.get<std::string>() + "'");
  return *l;
}

std::optional<AltLabel> opt_label_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return label_from(j);
}

json direction_map(const std::map<std::string, VoteDirection>& m) {
  json out = json::object();
  for (const auto& [name, d] : m) out[name] = to_string(d);
  return out;
}

std::map<std::string, VoteDirection> direction_map_from(const json& j) {
  std::map<std::string, VoteDirection> out;
  for (const auto& [name, d] : j.items()) out[name] = direction_from(d);
  return out;
}

json event_json(const TranscriptEvent& e) {
  return {{"turn_index", e.turn_index},
          {"stage", to_string(e.stage)},
          {"speaker", e.speaker},
          {"prompt", e.prompt},
          {"content", e.content},
          {"parsed_direction", direction_json(e.parsed_direction)},
          {"vote", e.vote ? json(to_string(*e.vote)) : json(nullptr)},
          {"attempt", e.attempt},
          {"confidential", e.confidential},
          {"note", e.note}};
}

TranscriptEvent event_from(const json& j) {
  TranscriptEvent e;
  e.turn_index = j.at("turn_index").get<int>();
  e.stage = parse_stage(j.at("stage").get<std::string>());
  e.speaker = j.at("speaker").get<std::string>();
  e.prompt = j.at("prompt").get<std::string>();
  e.content = j.at("content").get<std::string>();
  e.parsed_direction = opt_direction_from(j.at("parsed_direction"));
  e.vote = opt_label_from(j.at("vote"));
  e.attempt = j.at("attempt").get<int>();
  e.confidential = j.at("confidential").get<bool>();
  e.note = j.at("note").get<std::string>();
  return e;
}

json outcome_json(const MeetingOutcome& o) {
  json j;
  j["meeting"] = {{"date", o.date.iso()},
                  {"current_rate_bp", o.current_rate.basis_points()},
                  {"seed", o.seed},
                  {"turns_per_voter", o.turns_per_voter},
                  {"probe_enabled", o.probe_enabled}};

  j["participants"] = json::array();
  for (const auto& p : o.participants) {
    j["participants"].push_back({{"name", p.name}, {"role", to_string(p.role)}});
  }
  j["materials"] = json::array();
  for (const auto& m : o.materials) {
    j["materials"].push_back({{"kind", to_string(m.kind)},
                              {"sections", m.sections},
                              {"characters", m.characters},
                              {"chunks", m.chunks}});
  }
  j["probes"] = json::array();
  for (const auto& p : o.probes) {
    j["probes"].push_back({{"agent", p.agent_name},
                           {"district", p.result.district},
                           {"question", p.result.question},
                           {"response", p.result.response},
                           {"score", p.result.score},
                           {"attempts", p.result.attempts},
                           {"passed", p.result.passed}});
  }
  if (o.alternatives) {
    j["alternatives"] = json::array();
    for (const auto& a : o.alternatives->all()) {
      j["alternatives"].push_back({{"label", to_string(a.label)},
                                   {"target_bp", a.target.basis_points()},
                                   {"direction", to_string(a.direction)},
                                   {"rationale", a.rationale}});
    }
  } else {
    j["alternatives"] = nullptr;
  }
  j["alternative_warnings"] = o.alternative_warnings;
  j["private_ideas"] = json::array();
  for (const auto& p : o.private_ideas) {
    j["private_ideas"].push_back(
        {{"agent", p.agent_name}, {"direction", to_string(p.direction)}, {"reasoning", p.reasoning}});
  }
  j["first_round_order"] = o.first_round_order;
  j["first_round_directions"] = direction_map(o.first_round_directions);
  j["debate_schedule"] = {{"order", o.debate_schedule.order},
                          {"has_adjacent_repeat", o.debate_schedule.has_adjacent_repeat},
                          {"attempts", o.debate_schedule.attempts}};
  j["final_stances"] = direction_map(o.final_stances);
  j["final_votes"] = json::array();
  for (const auto& v : o.final_votes) {
    j["final_votes"].push_back({{"agent", v.agent_name}, {"choice", to_string(v.choice)}});
  }
  if (o.tally) {
    json counts = json::object();
    for (const auto& [label, n] : o.tally->counts) counts[to_string(label)] = n;
    j["tally"] = {{"counts", counts},
                  {"winner", to_string(o.tally->winner)},
                  {"tie_break", to_string(o.tally->tie_break)}};
  } else {
    j["tally"] = nullptr;
  }
  j["decided"] = o.decided ? json(to_string(*o.decided)) : json(nullptr);
  j["decided_rate_bp"] = o.decided_rate ? json(o.decided_rate->basis_points()) : json(nullptr);
  j["token_usage"] = {{"prompt_tokens", o.token_usage.prompt_tokens},
                      {"completion_tokens", o.token_usage.completion_tokens}};
  j["events"] = json::array();
  for (const auto& e : o.transcript) j["events"].push_back(event_json(e));
  return j;
}

MeetingOutcome outcome_from(const json& j) {
  MeetingOutcome o;
  const auto& m = j.at("meeting");
  o.date = MeetingDate::parse(m.at("date").get<std::string>());
  o.current_rate = PolicyRate(m.at("current_rate_bp").get<int>());
  o.seed = m.at("seed").get<std::uint64_t>();
  o.turns_per_voter = m.at("turns_per_voter").get<int>();
  o.probe_enabled = m.at("probe_enabled").get<bool>();

  for (const auto& p : j.at("participants")) {
    o.participants.push_back(
        {p.at("name").get<std::string>(), parse_role(p.at("role").get<std::string>())});
  }
  for (const auto& mj : j.at("materials")) {
    o.materials.push_back({parse_material_kind(mj.at("kind").get<std::string>()),
                           mj.at("sections").get<int>(), mj.at("characters").get<int>(),
                           mj.at("chunks").get<int>()});
  }
  for (const auto& p : j.at("probes")) {
    AgentProbe probe;
    probe.agent_name = p.at("agent").get<std::string>();
    probe.result.district = p.at("district").get<std::string>();
    probe.result.question = p.at("question").get<std::string>();
    probe.result.response = p.at("response").get<std::string>();
    probe.result.score = p.at("score").get<double>();
    probe.result.attempts = p.at("attempts").get<int>();
    probe.result.passed = p.at("passed").get<bool>();
    o.probes.push_back(std::move(probe));
  }
  if (!j.at("alternatives").is_null()) {
    std::vector<Alternative> alts;
    for (const auto& a : j.at("alternatives")) {
      alts.push_back({label_from(a.at("label")), PolicyRate(a.at("target_bp").get<int>()),
                      direction_from(a.at("direction")), a.at("rationale").get<std::string>()});
    }
    o.alternatives = AlternativeSet::make(std::move(alts), o.current_rate);
  }
  o.alternative_warnings = j.at("alternative_warnings").get<std::vector<std::string>>();
  for (const auto& p : j.at("private_ideas")) {
    o.private_ideas.push_back({p.at("agent").get<std::string>(), direction_from(p.at("direction")),
                               p.at("reasoning").get<std::string>()});
  }
  o.first_round_order = j.at("first_round_order").get<std::vector<std::string>>();
  o.first_round_directions = direction_map_from(j.at("first_round_directions"));
  const auto& ds = j.at("debate_schedule");
  o.debate_schedule.order = ds.at("order").get<std::vector<std::string>>();
  o.debate_schedule.has_adjacent_repeat = ds.at("has_adjacent_repeat").get<bool>();
  o.debate_schedule.attempts = ds.at("attempts").get<int>();
  o.final_stances = direction_map_from(j.at("final_stances"));
  for (const auto& v : j.at("final_votes")) {
    o.final_votes.push_back({v.at("agent").get<std::string>(), label_from(v.at("choice"))});
  }
  if (!j.at("tally").is_null()) {
    const auto& t = j.at("tally");
    TallyResult r;
    for (const auto& [label, n] : t.at("counts").items()) r.counts[label_from(json(label))] = n.get<int>();
    r.winner = label_from(t.at("winner"));
    r.tie_break = parse_tie_break(t.at("tie_break").get<std::string>());
    o.tally = r;
  }
  o.decided = opt_label_from(j.at("decided"));
  if (!j.at("decided_rate_bp").is_null()) o.decided_rate = PolicyRate(j.at("decided_rate_bp").get<int>());
  o.token_usage.prompt_tokens = j.at("token_usage").at("prompt_tokens").get<std::int64_t>();
  o.token_usage.completion_tokens = j.at("token_usage").at("completion_tokens").get<std::int64_t>();
  int last = -1;
  for (const auto& e : j.at("events")) {
    o.transcript.push_back(event_from(e));
    if (o.transcript.back().turn_index <= last) {
      throw TranscriptError("events are not ordered by turn_index");
    }
    last = o.transcript.back().turn_index;
  }
  return o;
}

}  // namespace

json to_json(const TranscriptFile& t) {
  json j = outcome_json(t.outcome);
  j["schema_version"] = t.schema_version;
  j["model"] = t.model;
  j["template_checksums"] = t.template_checksums;
  j["status"] = t.failure ? "failed" : "complete";
  j["error"] = t.failure ? json{{"stage", to_string(t.failure->stage)}, {"message", t.failure->message}}
                         : json(nullptr);
  return j;
}

TranscriptFile transcript_from_json(const json& j) {
  if (!j.is_object() || !j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
    throw TranscriptError("transcript has no integer schema_version");
  }
  const int version = j.at("schema_version").get<int>();
  if (version != kTranscriptSchemaVersion) {
    throw TranscriptError("unsupported transcript schema_version " + std::to_string(version) +
                          " (expected " + std::to_string(kTranscriptSchemaVersion) + ")");
  }
  try {
    TranscriptFile t;
    t.schema_version = version;
    t.model = j.at("model").get<std::string>();
    t.template_checksums = j.at("template_checksums").get<std::map<std::string, std::string>>();
    if (!j.at("error").is_null()) {
      t.failure = StageFailure{parse_stage(j.at("error").at("stage").get<std::string>()),
                               j.at("error").at("message").get<std::string>()};
    }
    t.outcome = outcome_from(j);
    return t;
  } catch (const TranscriptError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw TranscriptError(std::string("malformed transcript: ") + e.what());
  } catch (const Error& e) {
    throw TranscriptError(std::string("invalid transcript: ") + e.what());
  }
}

std::string serialize_transcript(const TranscriptFile& t) { return to_json(t).dump(2) + "\n"; }

TranscriptFile parse_transcript(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw TranscriptError("transcript is not valid JSON at byte " + std::to_string(e.byte) + ": " +
                              e.what(),
                          e.byte);
  }
  return transcript_from_json(j);
}

void write_transcript(const std::filesystem::path& path, const TranscriptFile& t) {
  write_file(path, serialize_transcript(t));
}

TranscriptFile read_transcript(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const ConfigError& e) {
    throw TranscriptError(e.what());
  }
  try {
    return parse_transcript(text);
  } catch (const TranscriptError& e) {
    throw TranscriptError(path.string() + ": " + e.what(), e.byte_offset());
  }
}

std::filesystem::path transcript_path(const std::filesystem::path& dir, const MeetingDate& date) {
  return dir / ("meeting-" + date.iso() + ".json");
}

}  // namespace fedsim
