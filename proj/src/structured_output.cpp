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

#include "fedsim/structured_output.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <regex>
#include <set>

#include "fedsim/error.hpp"
#include "fedsim/text.hpp"

namespace fedsim {

std::optional<AltLabel> parse_label(std::string_view text) {
  const auto t = trim(text);
  if (t.size() != 1) return std::nullopt;
  switch (t.front()) {
    case 'A': case 'a': return AltLabel::A;
    case 'B': case 'b': return AltLabel::B;
    case 'C': case 'c': return AltLabel::C;
    default: return std::nullopt;
  }
}

AlternativeSet AlternativeSet::make(std::vector<Alternative> alternatives, PolicyRate current) {
  if (alternatives.size() != 3) {
    throw ValidationError("expected exactly 3 alternatives, got " +
                          std::to_string(alternatives.size()));
  }
  std::sort(alternatives.begin(), alternatives.end(),
            [](const Alternative& a, const Alternative& b) { return a.label < b.label; });
  for (std::size_t i = 0; i < 3; ++i) {
    if (alternatives[i].label != kAltLabels[i]) {
      throw ValidationError("alternative labels must be exactly A, B and C");
    }
  }
  std::set<VoteDirection> directions;
  for (const auto& alt : alternatives) {
    if (alt.direction != direction_between(current, alt.target)) {
      throw ValidationError("alternative " + to_string(alt.label) + " is labelled " +
                            std::string(to_keyword(alt.direction)) + " but " +
                            alt.target.percent() + " vs current " + current.percent() + " is " +
                            std::string(to_keyword(direction_between(current, alt.target))));
    }
    const int step = std::abs(alt.target.basis_points() - current.basis_points());
    if (step > kMaxAlternativeStepBp) {
      throw ValidationError("alternative " + to_string(alt.label) + " moves " +
                            std::to_string(step) + " bp; at most " +
                            std::to_string(kMaxAlternativeStepBp) + " bp is allowed");
    }
    if (!directions.insert(alt.direction).second) {
      throw ValidationError("two alternatives share the direction " +
                            std::string(to_keyword(alt.direction)) +
                            "; need one INCREASE, one MAINTAIN and one DECREASE");
    }
  }
  AlternativeSet set;
  std::copy(alternatives.begin(), alternatives.end(), set.alts_.begin());
  return set;
}

const Alternative& AlternativeSet::at(AltLabel label) const {
  return alts_[static_cast<std::size_t>(to_char(label) - 'A')];
}

const Alternative& AlternativeSet::with_direction(VoteDirection d) const {
  return *std::find_if(alts_.begin(), alts_.end(),
                       [d](const Alternative& a) { return a.direction == d; });
}

std::string AlternativeSet::describe() const {
  std::vector<std::string> lines;
  for (const auto& a : alts_) {
    std::string line = "Alternative " + to_string(a.label) + ": " + a.target.percent() + " (" +
                       std::string(to_string(a.direction)) + ").";
    if (!a.rationale.empty()) line += " " + a.rationale;
    lines.push_back(std::move(line));
  }
  return join(lines, "\n");
}

namespace {

// Drops markdown decoration models like to wrap tagged lines in.
std::string strip_decoration(std::string_view line) {
  std::string out;
  for (char c : trim(line)) {
    if (c == '*' || c == '`' || c == '_' || c == '#' || c == '>') continue;
    out += c;
  }
  return std::string(trim(out));
}

// Value after "<TAG>:" on the last line carrying the tag, if any.
std::optional<std::string> last_tagged_value(std::string_view reply, std::string_view tag) {
  std::optional<std::string> value;
  const std::string lower_tag = to_lower(tag);
  for (auto raw : split_lines(reply)) {
    const auto line = strip_decoration(raw);
    if (line.size() <= tag.size() || to_lower(std::string_view(line).substr(0, tag.size())) != lower_tag) {
      continue;
    }
    auto rest = trim(std::string_view(line).substr(tag.size()));
    if (rest.empty() || rest.front() != ':') continue;
    value = std::string(trim(rest.substr(1)));
  }
  return value;
}

std::set<VoteDirection> direction_phrases(std::string_view text) {
  static const std::regex kIncrease(R"(\b(raise|raising|increase|increasing|hike|hiking|tighten|tightening)\b)",
                                    std::regex::icase);
  static const std::regex kDecrease(
      R"(\b(lower|lowering|decrease|decreasing|cut|cutting|reduce|reducing|ease|easing)\b)",
      std::regex::icase);
  static const std::regex kMaintain(R"(\b(maintain|maintaining|keep|keeping|unchanged|hold|holding)\b)",
                                    std::regex::icase);
  const std::string s(text);
  std::set<VoteDirection> found;
  if (std::regex_search(s, kIncrease)) found.insert(VoteDirection::Increase);
  if (std::regex_search(s, kDecrease)) found.insert(VoteDirection::Decrease);
  if (std::regex_search(s, kMaintain)) found.insert(VoteDirection::Maintain);
  return found;
}

std::string labels_text(const std::set<AltLabel>& labels) {
  std::string out;
  for (auto l : labels) {
    if (!out.empty()) out += ", ";
    out += to_char(l);
  }
  return out;
}

AltLabel single_label(const std::set<AltLabel>& labels) {
  if (labels.size() > 1) {
    throw ParseError("ambiguous vote naming several alternatives (" + labels_text(labels) +
                     "); choose exactly one");
  }
  return *labels.begin();
}

AltLabel from_direction(std::string_view text, const AlternativeSet& alternatives) {
  const auto dirs = direction_phrases(text);
  if (dirs.empty()) throw ParseError("no VOTE line and no recognizable choice");
  if (dirs.size() > 1) {
    throw ParseError("ambiguous vote mentioning several directions; choose exactly one");
  }
  return alternatives.with_direction(*dirs.begin()).label;
}

}  // namespace

ParsedAlternatives parse_alternatives(std::string_view reply, PolicyRate current) {
  static const std::regex kAltLine(R"(^ALT\s+([A-Za-z])\s*[:.)-]\s*(.*)$)", std::regex::icase);
  std::map<AltLabel, std::string> by_label;  // last line per label wins
  for (auto raw : split_lines(reply)) {
    const auto line = strip_decoration(raw);
    std::smatch m;
    if (!std::regex_match(line, m, kAltLine)) continue;
    const auto label = parse_label(m[1].str());
    if (!label) throw ParseError("unknown alternative label '" + m[1].str() + "'");
    by_label[*label] = m[2].str();
  }
  if (by_label.empty()) throw ParseError("no 'ALT <label>: <rate> | <direction> | <rationale>' lines");

  std::vector<Alternative> alts;
  std::vector<std::string> warnings;
  for (auto label : kAltLabels) {
    const auto it = by_label.find(label);
    if (it == by_label.end()) throw ParseError("missing ALT line for alternative " + to_string(label));
    const std::string& fields = it->second;
    const auto bar1 = fields.find('|');
    const auto bar2 = bar1 == std::string::npos ? std::string::npos : fields.find('|', bar1 + 1);
    if (bar2 == std::string::npos) {
      throw ParseError("ALT " + to_string(label) + " must have three '|'-separated fields");
    }
    Alternative alt;
    alt.label = label;
    alt.target = PolicyRate::parse_percent(std::string_view(fields).substr(0, bar1));
    const auto dir_text = trim(std::string_view(fields).substr(bar1 + 1, bar2 - bar1 - 1));
    const auto dir = parse_direction(dir_text);
    if (!dir) {
      throw ParseError("ALT " + to_string(label) + " has unknown direction '" + std::string(dir_text) +
                       "'");
    }
    alt.direction = *dir;
    alt.rationale = std::string(trim(std::string_view(fields).substr(bar2 + 1)));
    const int step = std::abs(alt.target.basis_points() - current.basis_points());
    if (step > kPreferredStepBp && step <= kMaxAlternativeStepBp) {
      warnings.push_back("alternative " + to_string(label) + " moves " + std::to_string(step) +
                         " bp, more than one quarter-point step");
    }
    alts.push_back(std::move(alt));
  }
  try {
    return {AlternativeSet::make(std::move(alts), current), std::move(warnings)};
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

VoteDirection parse_stance(std::string_view reply) {
  const auto value = last_tagged_value(reply, "STANCE");
  if (!value) throw ParseError("missing 'STANCE: INCREASE|MAINTAIN|DECREASE' line");
  // Tolerate trailing punctuation such as "STANCE: MAINTAIN."
  std::string word;
  for (char c : *value) {
    if (!std::isalpha(static_cast<unsigned char>(c))) break;
    word += c;
  }
  const auto dir = parse_direction(word);
  if (!dir) throw ParseError("unrecognized stance '" + *value + "'");
  return *dir;
}

AltLabel parse_vote(std::string_view reply, const AlternativeSet& alternatives) {
  static const std::regex kLetter(R"((^|[^A-Za-z])([A-Ca-c])(?=$|[^A-Za-z]))");
  static const std::regex kNamed(R"(\b(?:alternative|option|proposal|plan)\s+([ABCabc])\b)",
                                 std::regex::icase);
  static const std::regex kBare(R"(^[ABC]([\s,/]+(or|and)?[\s,/]*[ABC])*$)");

  if (const auto value = last_tagged_value(reply, "VOTE")) {
    std::set<AltLabel> labels;
    for (std::sregex_iterator it(value->begin(), value->end(), kLetter), end; it != end; ++it) {
      labels.insert(*parse_label((*it)[2].str()));
    }
    if (!labels.empty()) return single_label(labels);
    return from_direction(*value, alternatives);
  }

  const std::string text(reply);
  std::set<AltLabel> named;
  for (std::sregex_iterator it(text.begin(), text.end(), kNamed), end; it != end; ++it) {
    named.insert(*parse_label((*it)[1].str()));
  }
  if (!named.empty()) return single_label(named);

  std::string bare(trim(reply));
  while (!bare.empty() && (bare.back() == '.' || bare.back() == '!')) bare.pop_back();
  if (std::regex_match(bare, kBare)) {
    std::set<AltLabel> labels;
    for (char c : bare) {
      if (c >= 'A' && c <= 'C') labels.insert(static_cast<AltLabel>(c));
    }
    return single_label(labels);
  }
  return from_direction(reply, alternatives);
}

}  // namespace fedsim
