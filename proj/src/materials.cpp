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

#include "fedsim/materials.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <stdexcept>

#include "fedsim/error.hpp"
#include "fedsim/text.hpp"

namespace fedsim {

std::string_view to_string(MaterialKind k) {
  return k == MaterialKind::BeigeBook ? "beige_book" : "tealbook_a";
}

std::string_view display_name(MaterialKind k) {
  return k == MaterialKind::BeigeBook ? "Beige Book" : "TealBook A";
}

MaterialKind parse_material_kind(std::string_view text) {
  const auto lower = to_lower(trim(text));
  if (lower == "beige_book") return MaterialKind::BeigeBook;
  if (lower == "tealbook_a") return MaterialKind::TealBookA;
  if (lower == "tealbook_b") {
    throw ValidationError("TealBook B contains the staff policy alternatives and is not admitted");
  }
  throw ParseError("unknown material kind '" + std::string(text) +
                   "' (expected beige_book or tealbook_a)");
}

MaterialDoc MaterialDoc::make(MaterialKind kind, MeetingDate date, std::vector<Section> sections) {
  if (sections.empty()) throw ValidationError("material document has no sections");
  std::set<std::string> labels;
  for (const auto& s : sections) {
    if (trim(s.label).empty()) throw ValidationError("material section with empty label");
    if (!labels.insert(s.label).second) {
      throw ValidationError("duplicate section label '" + s.label + "'");
    }
    if (trim(s.body).empty()) throw ValidationError("section '" + s.label + "' is empty");
  }
  return MaterialDoc(kind, date, std::move(sections));
}

const Section* MaterialDoc::find(std::string_view label) const {
  for (const auto& s : sections_) {
    if (s.label == label) return &s;
  }
  return nullptr;
}

std::string MaterialDoc::section_block(std::size_t i) const {
  const auto& s = sections_.at(i);
  return (i > 0 ? "\n" : "") + ("== " + s.label + " ==\n") + s.body + "\n";
}

std::string MaterialDoc::body() const {
  std::string out;
  for (std::size_t i = 0; i < sections_.size(); ++i) out += section_block(i);
  return out;
}

namespace {

std::optional<std::string> delimiter_label(std::string_view line) {
  const auto t = trim(line);
  if (t.size() < 6 || !t.starts_with("==") || !t.ends_with("==")) return std::nullopt;
  auto label = trim(t.substr(2, t.size() - 4));
  if (label.empty()) return std::nullopt;
  return std::string(label);
}

std::string normalize_body(const std::vector<std::string_view>& lines) {
  std::vector<std::string> paragraphs;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) paragraphs.push_back(std::move(current));
    current.clear();
  };
  for (auto line : lines) {
    const auto t = trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    bool pending_space = !current.empty();
    for (char c : t) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        pending_space = true;
        continue;
      }
      if (pending_space) current += ' ';
      pending_space = false;
      current += c;
    }
  }
  flush();
  return join(paragraphs, "\n\n");
}

// Byte offset <= pos that does not fall inside a UTF-8 sequence.
std::size_t utf8_boundary(std::string_view s, std::size_t pos) {
  while (pos > 0 && pos < s.size() && (static_cast<unsigned char>(s[pos]) & 0xC0) == 0x80) --pos;
  return pos;
}

// Splits a section block after each paragraph break, then hard-splits any
// piece still over budget.
std::vector<std::string> split_block(const std::string& block, std::size_t max_chunk) {
  std::vector<std::string> paragraphs;
  std::size_t start = 0;
  // Skip the leading separator so "\n== label ==" is not taken as a break.
  std::size_t search = block.starts_with("\n") ? 1 : 0;
  while (true) {
    const auto brk = block.find("\n\n", search);
    if (brk == std::string::npos) break;
    paragraphs.push_back(block.substr(start, brk + 2 - start));
    start = brk + 2;
    search = start;
  }
  if (start < block.size()) paragraphs.push_back(block.substr(start));

  std::vector<std::string> pieces;
  for (auto& p : paragraphs) {
    std::string_view rest = p;
    while (rest.size() > max_chunk) {
      auto cut = utf8_boundary(rest, max_chunk);
      if (cut == 0) cut = max_chunk;
      pieces.emplace_back(rest.substr(0, cut));
      rest.remove_prefix(cut);
    }
    if (!rest.empty()) pieces.emplace_back(rest);
  }
  return pieces;
}

}  // namespace

MaterialDoc ingest_text(std::string_view text, MaterialKind kind, MeetingDate date) {
  std::vector<Section> sections;
  std::vector<std::string_view> body_lines;
  std::optional<std::string> label;
  std::set<std::string> seen;
  const auto close = [&] {
    if (!label) return;
    sections.push_back({*label, normalize_body(body_lines)});
    body_lines.clear();
  };
  for (auto line : split_lines(text)) {
    if (auto next = delimiter_label(line)) {
      close();
      if (!seen.insert(*next).second) throw ParseError("duplicate section label '" + *next + "'");
      label = std::move(next);
      continue;
    }
    if (!label) {
      if (!trim(line).empty()) throw ParseError("text before the first '== <label> ==' delimiter");
      continue;
    }
    body_lines.push_back(line);
  }
  close();
  if (sections.empty()) throw ParseError("no '== <label> ==' sections found");
  for (const auto& s : sections) {
    if (s.body.empty()) throw ParseError("section '" + s.label + "' has no text");
  }
  return MaterialDoc::make(kind, date, std::move(sections));
}

MaterialDoc ingest(const std::filesystem::path& path, MaterialKind kind, MeetingDate date) {
  const std::string text = read_file(path);
  try {
    return ingest_text(text, kind, date);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> chunk_document(const MaterialDoc& doc, std::size_t max_chunk) {
  if (max_chunk == 0) throw std::invalid_argument("max_chunk must be positive");
  std::vector<std::string> pieces;
  for (std::size_t i = 0; i < doc.sections().size(); ++i) {
    auto block = doc.section_block(i);
    if (block.size() <= max_chunk) {
      pieces.push_back(std::move(block));
    } else {
      for (auto& p : split_block(block, max_chunk)) pieces.push_back(std::move(p));
    }
  }
  std::vector<std::string> chunks;
  std::string current;
  for (auto& piece : pieces) {
    if (!current.empty() && current.size() + piece.size() > max_chunk) {
      chunks.push_back(std::move(current));
      current.clear();
    }
    current += piece;
  }
  if (!current.empty()) chunks.push_back(std::move(current));
  return chunks;
}

bool is_acknowledgement(std::string_view reply) { return contains_icase(reply, "completed"); }

int feed_materials(ChatBackend& backend, Session& session, const MaterialDoc& doc,
                   const TemplateSet& templates, const FeedOptions& options,
                   const ExchangeFn& on_exchange) {
  if (options.max_chunk == 0) throw std::invalid_argument("max_chunk must be positive");
  const auto chunks = chunk_document(doc, options.max_chunk);
  const std::string name(display_name(doc.kind()));
  const int total = static_cast<int>(chunks.size());
  for (int i = 0; i < total; ++i) {
    const std::string note =
        total > 1 ? " (part " + std::to_string(i + 1) + " of " + std::to_string(total) + ")" : "";
    const auto prompt = templates.render(
        tmpl::kMaterialsLearning,
        {{"document_name", name}, {"part_note", note}, {"content", chunks[static_cast<std::size_t>(i)]}});
    auto reply = backend.send(session, prompt);
    if (on_exchange) on_exchange(prompt, reply);
    int retries = 0;
    while (!is_acknowledgement(reply)) {
      if (retries++ >= options.ack_retries) {
        throw FeedError("agent '" + session.agent_name() + "' did not acknowledge " + name +
                        " part " + std::to_string(i + 1) + " after " +
                        std::to_string(options.ack_retries) + " reminders");
      }
      const auto nudge = templates.render(tmpl::kMaterialsNudge, {{"document_name", name}});
      reply = backend.send(session, nudge);
      if (on_exchange) on_exchange(nudge, reply);
    }
  }
  return total;
}

void cleanse_memory(ChatBackend& backend, Session& session, const MeetingDate& date,
                    const TemplateSet& templates, const ExchangeFn& on_exchange) {
  const auto prompt = templates.render(tmpl::kCleanse, {{"meeting_date", date.long_name()}});
  const auto reply = backend.send(session, prompt);
  if (on_exchange) on_exchange(prompt, reply);
}

StopWords StopWords::parse(std::string_view text) {
  std::set<std::string> words;
  for (auto line : split_lines(text)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    words.insert(to_lower(t));
  }
  return StopWords(std::move(words));
}

StopWords StopWords::load(const std::filesystem::path& path) { return parse(read_file(path)); }

std::set<std::string> content_tokens(std::string_view text, const StopWords& stopwords) {
  std::set<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty() && !stopwords.contains(current)) tokens.insert(current);
    current.clear();
  };
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      current += static_cast<char>(std::tolower(uc));
    } else if (c == '\'') {
      // "region's" -> "regions": apostrophes join rather than split.
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

double score_probe(std::string_view response, std::string_view reference,
                   const StopWords& stopwords) {
  if (trim(reference).empty()) throw std::invalid_argument("probe reference must be non-empty");
  const auto ref = content_tokens(reference, stopwords);
  if (ref.empty()) return 0.0;
  const auto resp = content_tokens(response, stopwords);
  std::size_t hits = 0;
  for (const auto& t : ref) hits += resp.count(t);
  return static_cast<double>(hits) / static_cast<double>(ref.size());
}

ProbeResult comprehension_probe(ChatBackend& backend, Session& session, const MaterialDoc& doc,
                                Rng& rng, const TemplateSet& templates, const StopWords& stopwords,
                                const ProbeOptions& options, const ExchangeFn& on_exchange) {
  const auto& section = doc.sections().at(
      static_cast<std::size_t>(uniform_index(rng, doc.sections().size())));
  ProbeResult result;
  result.district = section.label;
  result.question = templates.render(tmpl::kProbe, {{"district", section.label}});
  const int max_attempts = 1 + std::max(0, options.max_retries);
  while (result.attempts < max_attempts) {
    const auto prompt = result.attempts == 0
                            ? result.question
                            : templates.render(tmpl::kProbeRetry, {{"district", section.label}});
    result.response = backend.send(session, prompt);
    ++result.attempts;
    if (on_exchange) on_exchange(prompt, result.response);
    result.score = score_probe(result.response, section.body, stopwords);
    result.passed = result.score >= options.threshold;
    if (result.passed) break;
  }
  return result;
}

}  // namespace fedsim
