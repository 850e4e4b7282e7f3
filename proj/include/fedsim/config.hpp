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

// Run configuration file (JSON). Relative paths resolve against the directory
// holding the config file. Settings are layered: command-line flags override
// environment variables, which override the file.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedsim/engine.hpp"
#include "fedsim/http_backend.hpp"
#include "fedsim/materials.hpp"

namespace fedsim {

enum class BackendKind { Scripted, Recall, OpenAi };
std::string_view to_string(BackendKind k);  // "scripted", "recall", "openai"
BackendKind parse_backend_kind(std::string_view text);

struct MaterialRef {
  MaterialKind kind = MaterialKind::BeigeBook;
  std::filesystem::path path;
};

struct MeetingSpec {
  MeetingDate date;
  PolicyRate current_rate;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> roster;  // overrides RunConfig::roster
  std::optional<std::filesystem::path> script;  // scripted backend only
  std::vector<MaterialRef> materials;
};

struct ProbeSettings {
  bool enabled = false;
  double threshold = 0.3;
  int max_retries = 3;
  bool strict = false;
};

struct RunConfig {
  BackendKind backend_kind = BackendKind::Scripted;
  BackendConfig backend;
  std::filesystem::path roster;
  std::filesystem::path templates_dir;
  std::filesystem::path stopwords;
  std::filesystem::path output_dir;
  std::optional<std::filesystem::path> ground_truth;
  std::vector<MeetingSpec> meetings;

  ProbeSettings probe;
  int parse_retries = 2;
  int turns_per_voter = 3;
  bool avoid_repeat_speakers = true;
  int schedule_max_attempts = 1000;
  FeedOptions feed;

  /// Checks ranges and that every referenced path exists. Throws ConfigError.
  void validate() const;
  const MeetingSpec& meeting(const MeetingDate& date) const;
  EngineOptions engine_options() const;
};

/// Directory holding the bundled templates and stopword list.
std::filesystem::path default_data_dir();

/// Parses without validating paths. `base_dir` anchors relative paths.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
/// Reads, resolves and validates. Throws ConfigError.
RunConfig load_run_config(const std::filesystem::path& path);

using EnvLookup = std::function<const char*(const char*)>;

/// FEDSIM_OUTPUT_DIR, FEDSIM_TEMPLATES_DIR, FEDSIM_BACKEND, FEDSIM_MODEL and
/// FEDSIM_ENDPOINT override the matching file settings.
void apply_env(RunConfig& config, const EnvLookup& getenv);

/// Loads the roster and materials for one meeting.
MeetingConfig build_meeting_config(const RunConfig& config, const MeetingSpec& spec);

/// Backend for one meeting. Scripted backends are per meeting (each meeting has
/// its own script); callers share a live backend across meetings themselves.
std::unique_ptr<ChatBackend> make_backend(const RunConfig& config, const MeetingSpec* spec,
                                          LogFn log = {});

}  // namespace fedsim
