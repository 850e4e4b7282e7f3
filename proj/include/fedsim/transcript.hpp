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

// JSON persistence of meeting outcomes. Output is canonical: keys sorted,
// two-space indentation, trailing newline, so equal transcripts are equal bytes.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fedsim/engine.hpp"

namespace fedsim {

inline constexpr int kTranscriptSchemaVersion = 1;

class TranscriptError : public Error {
 public:
  explicit TranscriptError(const std::string& message,
                           std::optional<std::size_t> byte_offset = std::nullopt)
      : Error(message), byte_offset_(byte_offset) {}
  std::optional<std::size_t> byte_offset() const noexcept { return byte_offset_; }

 private:
  std::optional<std::size_t> byte_offset_;
};

struct StageFailure {
  Stage stage = Stage::Cleanse;
  std::string message;
  bool operator==(const StageFailure&) const = default;
};

struct TranscriptFile {
  int schema_version = kTranscriptSchemaVersion;
  std::string model;
  std::map<std::string, std::string> template_checksums;
  std::optional<StageFailure> failure;  // set for partial transcripts
  MeetingOutcome outcome;

  bool complete() const { return !failure && outcome.complete(); }
};

nlohmann::json to_json(const TranscriptFile& t);
/// Throws TranscriptError for unknown schema versions or malformed fields.
TranscriptFile transcript_from_json(const nlohmann::json& j);

/// Canonical text form.
std::string serialize_transcript(const TranscriptFile& t);
/// Throws TranscriptError; syntax errors carry the byte offset.
TranscriptFile parse_transcript(std::string_view text);

void write_transcript(const std::filesystem::path& path, const TranscriptFile& t);
TranscriptFile read_transcript(const std::filesystem::path& path);

/// "<dir>/meeting-2018-05.json"
std::filesystem::path transcript_path(const std::filesystem::path& dir, const MeetingDate& date);

}  // namespace fedsim
