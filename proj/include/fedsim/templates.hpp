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

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace fedsim {

using TemplateVars = std::map<std::string, std::string, std::less<>>;

/// Substitutes `{name}` placeholders. Braces not enclosing an identifier
/// ([a-z_][a-z0-9_]*) are copied verbatim. Throws RenderError naming the first
/// unresolved variable.
std::string render_template(std::string_view text, const TemplateVars& vars);

/// Placeholder names referenced by a template, in sorted order.
std::set<std::string> template_variables(std::string_view text);

/// Names of the template files the engine requires (file stem + ".txt").
namespace tmpl {
inline constexpr std::string_view kCharacter = "character";
inline constexpr std::string_view kSocioDemographic = "socio_demographic";
inline constexpr std::string_view kPersonality = "personality";
inline constexpr std::string_view kMaterialsLearning = "materials_learning";
inline constexpr std::string_view kAlternatives = "alternatives";
inline constexpr std::string_view kPrivateIdea = "private_idea";
inline constexpr std::string_view kFirstRound = "first_round";
inline constexpr std::string_view kSecondRound = "second_round";
inline constexpr std::string_view kLegalReview = "legal_review";
inline constexpr std::string_view kFinalVote = "final_vote";
inline constexpr std::string_view kCleanse = "cleanse";
inline constexpr std::string_view kMaterialsNudge = "materials_nudge";
inline constexpr std::string_view kProbe = "probe";
inline constexpr std::string_view kProbeRetry = "probe_retry";
inline constexpr std::string_view kContamination = "contamination";
inline constexpr std::string_view kReformat = "reformat";
inline constexpr std::string_view kFormatAlternatives = "format_alternatives";
inline constexpr std::string_view kFormatStance = "format_stance";
inline constexpr std::string_view kFormatVote = "format_vote";
inline constexpr std::string_view kFormatLegal = "format_legal";
inline constexpr std::string_view kFirstRoundDigest = "first_round_digest";
inline constexpr std::string_view kDebateCatchUp = "debate_catch_up";
inline constexpr std::string_view kMeetingDigest = "meeting_digest";
inline constexpr std::string_view kLegalBroadcast = "legal_broadcast";

std::set<std::string_view> required();
}  // namespace tmpl

/// A directory of plain-text prompt templates keyed by file stem.
class TemplateSet {
 public:
  TemplateSet() = default;

  /// Loads every `*.txt` in `dir`. Throws ConfigError if a required template is missing.
  static TemplateSet load(const std::filesystem::path& dir);

  void add(std::string name, std::string text);
  bool contains(std::string_view name) const;
  const std::string& text(std::string_view name) const;

  std::string render(std::string_view name, const TemplateVars& vars) const;

  /// FNV-1a checksum per template, recorded in transcripts.
  std::map<std::string, std::string> checksums() const;

  const std::map<std::string, std::string, std::less<>>& all() const { return templates_; }

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

}  // namespace fedsim
