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

#include "fedsim/templates.hpp"

#include <cctype>

#include "fedsim/error.hpp"
#include "fedsim/text.hpp"

namespace fedsim {
namespace {

bool ident_start(char c) { return c == '_' || (c >= 'a' && c <= 'z'); }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

// Length of the identifier starting at text[pos] if it is followed by '}', else 0.
std::size_t placeholder_length(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || !ident_start(text[pos])) return 0;
  std::size_t end = pos;
  while (end < text.size() && ident_char(text[end])) ++end;
  if (end >= text.size() || text[end] != '}') return 0;
  return end - pos;
}

template <typename OnVar, typename OnText>
void scan(std::string_view text, OnVar on_var, OnText on_text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const auto len = placeholder_length(text, i + 1);
      if (len > 0) {
        on_var(text.substr(i + 1, len));
        i += len + 2;
        continue;
      }
    }
    on_text(text[i]);
    ++i;
  }
}

}  // namespace

std::string render_template(std::string_view text, const TemplateVars& vars) {
  std::string out;
  out.reserve(text.size());
  scan(
      text,
      [&](std::string_view name) {
        const auto it = vars.find(name);
        if (it == vars.end()) {
          throw RenderError(std::string(name),
                            "unresolved template variable '" + std::string(name) + "'");
        }
        out += it->second;
      },
      [&](char c) { out += c; });
  return out;
}

std::set<std::string> template_variables(std::string_view text) {
  std::set<std::string> names;
  scan(text, [&](std::string_view name) { names.emplace(name); }, [](char) {});
  return names;
}

std::set<std::string_view> tmpl::required() {
  return {kCharacter,      kSocioDemographic, kPersonality,        kMaterialsLearning,
          kAlternatives,   kPrivateIdea,      kFirstRound,         kSecondRound,
          kLegalReview,    kFinalVote,        kCleanse,            kMaterialsNudge,
          kProbe,          kProbeRetry,       kContamination,      kReformat,
          kFormatAlternatives, kFormatStance, kFormatVote,         kFormatLegal,
          kFirstRoundDigest,
          kDebateCatchUp,  kMeetingDigest,    kLegalBroadcast};
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("template directory not found: " + dir.string());
  }
  TemplateSet set;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::string text = read_file(entry.path());
    // A single trailing newline is an editor artifact, not prompt content.
    if (!text.empty() && text.back() == '\n') text.pop_back();
    set.add(entry.path().stem().string(), std::move(text));
  }
  for (auto name : tmpl::required()) {
    if (!set.contains(name)) {
      throw ConfigError("template directory " + dir.string() + " is missing " +
                        std::string(name) + ".txt");
    }
  }
  return set;
}

void TemplateSet::add(std::string name, std::string text) {
  templates_.insert_or_assign(std::move(name), std::move(text));
}

bool TemplateSet::contains(std::string_view name) const {
  return templates_.find(name) != templates_.end();
}

const std::string& TemplateSet::text(std::string_view name) const {
  const auto it = templates_.find(name);
  if (it == templates_.end()) throw ConfigError("unknown template: " + std::string(name));
  return it->second;
}

std::string TemplateSet::render(std::string_view name, const TemplateVars& vars) const {
  try {
    return render_template(text(name), vars);
  } catch (const RenderError& e) {
    throw RenderError(e.variable(), "template '" + std::string(name) + "': " + e.what());
  }
}

std::map<std::string, std::string> TemplateSet::checksums() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, text] : templates_) out.emplace(name, fnv1a_hex(text));
  return out;
}

}  // namespace fedsim
