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

#include "fedsim/config.hpp"

#include <set>

#include "fedsim/persona.hpp"
#include "fedsim/scripted_backend.hpp"
#include "fedsim/text.hpp"

#ifndef FEDSIM_DATA_DIR
#define FEDSIM_DATA_DIR "data"
#endif

namespace fedsim {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(BackendKind k) {
  switch (k) {
    case BackendKind::Scripted: return "scripted";
    case BackendKind::Recall: return "recall";
    case BackendKind::OpenAi: return "openai";
  }
  return "scripted";
}

BackendKind parse_backend_kind(std::string_view text) {
  if (text == "scripted") return BackendKind::Scripted;
  if (text == "recall") return BackendKind::Recall;
  if (text == "openai") return BackendKind::OpenAi;
  throw ConfigError("unknown backend '" + std::string(text) + "' (expected scripted, recall or openai)");
}

fs::path default_data_dir() { return FEDSIM_DATA_DIR; }

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void require_exists(const fs::path& p, const std::string& what) {
  if (!fs::exists(p)) throw ConfigError(what + " not found: " + p.string());
}

}  // namespace

RunConfig run_config_from_json(const json& j, const fs::path& base_dir) {
  RunConfig c;
  try {
    if (j.contains("backend")) {
      const auto& b = j.at("backend");
      if (b.contains("api_key") || b.contains("key")) {
        throw ConfigError("credentials are read from the environment only; remove the key from the config file");
      }
      c.backend_kind = parse_backend_kind(b.value("kind", "scripted"));
      json rest = b;
      rest.erase("kind");
      c.backend = BackendConfig::from_json(rest);
    }
    c.roster = resolve(base_dir, j.at("roster").get<std::string>());
    c.templates_dir = j.contains("templates_dir")
                          ? resolve(base_dir, j.at("templates_dir").get<std::string>())
                          : default_data_dir() / "templates";
    c.stopwords = j.contains("stopwords") ? resolve(base_dir, j.at("stopwords").get<std::string>())
                                          : default_data_dir() / "stopwords.txt";
    c.output_dir = resolve(base_dir, j.value("output_dir", std::string("out")));
    if (j.contains("ground_truth")) {
      c.ground_truth = resolve(base_dir, j.at("ground_truth").get<std::string>());
    }
    c.parse_retries = j.value("parse_retries", c.parse_retries);
    if (j.contains("probe")) {
      const auto& p = j.at("probe");
      c.probe.enabled = p.value("enabled", c.probe.enabled);
      c.probe.threshold = p.value("threshold", c.probe.threshold);
      c.probe.max_retries = p.value("max_retries", c.probe.max_retries);
      c.probe.strict = p.value("strict", c.probe.strict);
    }
    if (j.contains("schedule")) {
      const auto& s = j.at("schedule");
      c.turns_per_voter = s.value("turns_per_voter", c.turns_per_voter);
      c.avoid_repeat_speakers = s.value("avoid_repeat_speakers", c.avoid_repeat_speakers);
      c.schedule_max_attempts = s.value("max_attempts", c.schedule_max_attempts);
    }
    if (j.contains("feed")) {
      const auto& f = j.at("feed");
      c.feed.max_chunk = f.value("max_chunk", c.feed.max_chunk);
      c.feed.ack_retries = f.value("ack_retries", c.feed.ack_retries);
    }
    for (const auto& m : j.at("meetings")) {
      MeetingSpec spec;
      spec.date = MeetingDate::parse(m.at("date").get<std::string>());
      spec.current_rate = PolicyRate::parse_percent(m.at("current_rate").get<std::string>());
      spec.seed = m.at("seed").get<std::uint64_t>();
      if (m.contains("roster")) spec.roster = resolve(base_dir, m.at("roster").get<std::string>());
      if (m.contains("script")) spec.script = resolve(base_dir, m.at("script").get<std::string>());
      for (const auto& mat : m.at("materials")) {
        spec.materials.push_back({parse_material_kind(mat.at("kind").get<std::string>()),
                                  resolve(base_dir, mat.at("path").get<std::string>())});
      }
      c.meetings.push_back(std::move(spec));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return c;
}

void RunConfig::validate() const {
  backend.validate();
  if (meetings.empty()) throw ConfigError("config lists no meetings");
  if (parse_retries < 0) throw ConfigError("parse_retries must be >= 0");
  if (turns_per_voter < 1) throw ConfigError("schedule.turns_per_voter must be >= 1");
  if (schedule_max_attempts < 1) throw ConfigError("schedule.max_attempts must be >= 1");
  if (feed.max_chunk == 0) throw ConfigError("feed.max_chunk must be positive");
  if (feed.ack_retries < 0) throw ConfigError("feed.ack_retries must be >= 0");
  if (probe.threshold < 0.0 || probe.threshold > 1.0) {
    throw ConfigError("probe.threshold must lie in [0, 1]");
  }
  if (probe.max_retries < 0) throw ConfigError("probe.max_retries must be >= 0");
  require_exists(roster, "roster");
  require_exists(templates_dir, "templates directory");
  require_exists(stopwords, "stopword list");
  std::set<MeetingDate> dates;
  for (const auto& m : meetings) {
    if (!dates.insert(m.date).second) throw ConfigError("meeting " + m.date.iso() + " listed twice");
    if (m.materials.empty()) throw ConfigError("meeting " + m.date.iso() + " has no materials");
    for (const auto& mat : m.materials) require_exists(mat.path, "materials for " + m.date.iso());
    if (m.roster) require_exists(*m.roster, "roster for " + m.date.iso());
    if (m.script) require_exists(*m.script, "script for " + m.date.iso());
    if (backend_kind == BackendKind::Scripted && !m.script) {
      throw ConfigError("meeting " + m.date.iso() + " needs a script for the scripted backend");
    }
  }
}

const MeetingSpec& RunConfig::meeting(const MeetingDate& date) const {
  for (const auto& m : meetings) {
    if (m.date == date) return m;
  }
  throw ConfigError("meeting " + date.iso() + " is not in the config");
}

EngineOptions RunConfig::engine_options() const {
  EngineOptions o;
  o.parse_retries = parse_retries;
  o.feed = feed;
  o.probe.threshold = probe.threshold;
  o.probe.max_retries = probe.max_retries;
  o.strict_probe = probe.strict;
  o.avoid_repeat_speakers = avoid_repeat_speakers;
  o.schedule_max_attempts = schedule_max_attempts;
  return o;
}

RunConfig load_run_config(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON at byte " + std::to_string(e.byte));
  }
  return run_config_from_json(j, fs::absolute(path).parent_path());
}

void apply_env(RunConfig& config, const EnvLookup& getenv) {
  const auto get = [&](const char* name) -> std::optional<std::string> {
    const char* v = getenv ? getenv(name) : nullptr;
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
  if (auto v = get("FEDSIM_OUTPUT_DIR")) config.output_dir = *v;
  if (auto v = get("FEDSIM_TEMPLATES_DIR")) config.templates_dir = *v;
  if (auto v = get("FEDSIM_BACKEND")) config.backend_kind = parse_backend_kind(*v);
  if (auto v = get("FEDSIM_MODEL")) config.backend.model = *v;
  if (auto v = get("FEDSIM_ENDPOINT")) config.backend.endpoint = *v;
}

MeetingConfig build_meeting_config(const RunConfig& config, const MeetingSpec& spec) {
  try {
    Roster roster = load_roster(spec.roster.value_or(config.roster));
    std::vector<MaterialDoc> materials;
    for (const auto& ref : spec.materials) materials.push_back(ingest(ref.path, ref.kind, spec.date));
    MeetingConfig m{spec.date,        spec.current_rate,      std::move(roster),
                    std::move(materials), spec.seed, config.turns_per_voter,
                    config.probe.enabled};
    m.validate();
    return m;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("meeting " + spec.date.iso() + ": " + e.what());
  }
}

std::unique_ptr<ChatBackend> make_backend(const RunConfig& config, const MeetingSpec* spec,
                                          LogFn log) {
  switch (config.backend_kind) {
    case BackendKind::Scripted: {
      if (spec == nullptr || !spec->script) throw ConfigError("the scripted backend needs a meeting script");
      try {
        return std::make_unique<ScriptedBackend>(Script::load(*spec->script));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError("script " + spec->script->string() + ": " + e.what());
      }
    }
    case BackendKind::Recall:
      return std::make_unique<RecallBackend>();
    case BackendKind::OpenAi:
      return std::make_unique<OpenAiBackend>(config.backend,
                                             OpenAiBackend::credential_from_env(config.backend),
                                             std::move(log));
  }
  throw ConfigError("unknown backend kind");
}

}  // namespace fedsim
