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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fedsim/backend.hpp"
#include "fedsim/random.hpp"
#include "fedsim/templates.hpp"
#include "fedsim/types.hpp"

namespace fedsim {

/// Only the public Beige Book and staff TealBook A are admitted. TealBook B
/// carries the staff's own policy alternatives and is rejected on parse.
enum class MaterialKind { BeigeBook, TealBookA };

std::string_view to_string(MaterialKind k);   // "beige_book", "tealbook_a"
std::string_view display_name(MaterialKind k); // "Beige Book", "TealBook A"
MaterialKind parse_material_kind(std::string_view text);

struct Section {
  std::string label;
  std::string body;  // paragraphs separated by one blank line, single spaces within
};

class MaterialDoc {
 public:
  /// Throws ValidationError for zero sections, empty bodies or duplicate labels.
  static MaterialDoc make(MaterialKind kind, MeetingDate date, std::vector<Section> sections);

  MaterialKind kind() const { return kind_; }
  const MeetingDate& meeting_date() const { return date_; }
  const std::vector<Section>& sections() const { return sections_; }
  const Section* find(std::string_view label) const;

  /// Canonical text fed to agents: each section as "== label ==\n<body>\n",
  /// sections separated by one blank line.
  std::string body() const;
  /// The rendering of section i inside body(), including its separator.
  std::string section_block(std::size_t i) const;

 private:
  MaterialDoc(MaterialKind kind, MeetingDate date, std::vector<Section> sections)
      : kind_(kind), date_(date), sections_(std::move(sections)) {}

  MaterialKind kind_;
  MeetingDate date_;
  std::vector<Section> sections_;
};

/// Splits text on `== <label> ==` delimiter lines. Throws ParseError if no
/// section is found or non-blank text precedes the first delimiter.
MaterialDoc ingest_text(std::string_view text, MaterialKind kind, MeetingDate date);
MaterialDoc ingest(const std::filesystem::path& path, MaterialKind kind, MeetingDate date);

/// Consecutive pieces of body() whose concatenation is body() exactly. Sections
/// that fit are never split; an oversized section is split at paragraph
/// boundaries, and an oversized paragraph at the character budget.
std::vector<std::string> chunk_document(const MaterialDoc& doc, std::size_t max_chunk);

/// Called with each prompt sent and the reply received.
using ExchangeFn = std::function<void(const std::string& prompt, const std::string& reply)>;

class FeedError : public Error {
 public:
  using Error::Error;
};

struct FeedOptions {
  std::size_t max_chunk = 12'000;
  int ack_retries = 2;
};

/// True when the reply acknowledges reading ("Completed", any case).
bool is_acknowledgement(std::string_view reply);

/// Sends the document in chunks, each framed by the materials-learning
/// template, waiting for an acknowledgement before the next. Returns the
/// number of chunks. Throws FeedError when a chunk stays unacknowledged.
int feed_materials(ChatBackend& backend, Session& session, const MaterialDoc& doc,
                   const TemplateSet& templates, const FeedOptions& options,
                   const ExchangeFn& on_exchange = {});

/// Sends the memory-cleanse instruction for the meeting.
void cleanse_memory(ChatBackend& backend, Session& session, const MeetingDate& date,
                    const TemplateSet& templates, const ExchangeFn& on_exchange = {});

class StopWords {
 public:
  StopWords() = default;
  explicit StopWords(std::set<std::string> words) : words_(std::move(words)) {}

  /// One word per line; blank lines and lines starting with '#' ignored.
  static StopWords parse(std::string_view text);
  static StopWords load(const std::filesystem::path& path);

  bool contains(const std::string& word) const { return words_.count(word) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string> words_;
};

/// Distinct lowercase alphanumeric tokens that are not stopwords.
std::set<std::string> content_tokens(std::string_view text, const StopWords& stopwords);

/// Fraction of the reference's distinct content tokens present in the
/// response. Empty response scores 0. Throws std::invalid_argument for an
/// empty reference.
double score_probe(std::string_view response, std::string_view reference,
                   const StopWords& stopwords);

struct ProbeOptions {
  double threshold = 0.3;
  int max_retries = 3;
};

struct ProbeResult {
  std::string district;
  std::string question;
  std::string response;
  double score = 0.0;
  int attempts = 0;  // probe prompts sent, at most 1 + max_retries
  bool passed = false;
};

/// Asks about one uniformly chosen section and scores the answer against it.
/// A failing answer gets a re-read instruction and another try, up to
/// max_retries. Never throws for a failed probe; backend errors propagate.
ProbeResult comprehension_probe(ChatBackend& backend, Session& session, const MaterialDoc& doc,
                                Rng& rng, const TemplateSet& templates, const StopWords& stopwords,
                                const ProbeOptions& options, const ExchangeFn& on_exchange = {});

}  // namespace fedsim
