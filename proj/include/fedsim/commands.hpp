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

// The `fedsim` subcommands. Each returns a process exit status and never
// throws; results go to `out`, diagnostics to `err`.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "fedsim/config.hpp"

namespace fedsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,     // unexpected failure (a bug)
  kExitConfig = 2,       // bad config, missing file or credential
  kExitStage = 3,        // a meeting stage failed
  kExitEvaluation = 4,   // evaluation inputs unusable
  kExitProbe = 5,        // strict probe failed
  kExitTranscript = 6,   // transcript unreadable or of unknown version
};

struct CommandIo {
  std::ostream& out;
  std::ostream& err;
  EnvLookup getenv;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::string> backend;
  std::optional<std::string> model;
  std::optional<std::string> endpoint;
  std::optional<bool> strict_probe;
  std::optional<bool> probe_enabled;
};

/// Loads the config and layers environment then flags on top of it.
RunConfig resolve_config(const std::filesystem::path& config_path, const Overrides& overrides,
                         const EnvLookup& getenv);

int cmd_run(const std::filesystem::path& config_path, const std::string& meeting,
            const Overrides& overrides, CommandIo io);

int cmd_campaign(const std::filesystem::path& config_path, int parallel, const Overrides& overrides,
                 CommandIo io);

int cmd_evaluate(const std::filesystem::path& transcripts_dir,
                 const std::filesystem::path& ground_truth, const std::string& format, CommandIo io);

int cmd_probe(const std::filesystem::path& config_path, const std::string& meeting,
              bool contamination, const Overrides& overrides, CommandIo io);

int cmd_replay(const std::filesystem::path& transcript_path, CommandIo io);

}  // namespace fedsim
