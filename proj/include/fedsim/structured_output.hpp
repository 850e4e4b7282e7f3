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

// Policy alternatives and the machine-readable lines agents end replies with:
//
//   ALT <label>: <rate percent> | <INCREASE|MAINTAIN|DECREASE> | <rationale>
//   STANCE: <INCREASE|MAINTAIN|DECREASE>
//   VOTE: <A|B|C>
//
// Parsers throw ParseError with a message suitable for a reformat request.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedsim/types.hpp"

namespace fedsim {

enum class AltLabel : char { A = 'A', B = 'B', C = 'C' };

inline constexpr std::array<AltLabel, 3> kAltLabels = {AltLabel::A, AltLabel::B, AltLabel::C};

inline char to_char(AltLabel l) { return static_cast<char>(l); }
inline std::string to_string(AltLabel l) { return std::string(1, to_char(l)); }
std::optional<AltLabel> parse_label(std::string_view text);

/// Largest move away from the current rate an alternative may propose.
inline constexpr int kMaxAlternativeStepBp = 50;
/// Moves beyond this are accepted with a warning.
inline constexpr int kPreferredStepBp = 25;

struct Alternative {
  AltLabel label = AltLabel::A;
  PolicyRate target;
  VoteDirection direction = VoteDirection::Maintain;
  std::string rationale;
};

/// Exactly three alternatives labelled A, B, C with one increase, one
/// maintain and one decrease relative to the current rate.
class AlternativeSet {
 public:
  /// Throws ValidationError naming the violated invariant.
  static AlternativeSet make(std::vector<Alternative> alternatives, PolicyRate current);

  const std::array<Alternative, 3>& all() const { return alts_; }
  const Alternative& at(AltLabel label) const;
  /// The unique alternative moving in direction `d`.
  const Alternative& with_direction(VoteDirection d) const;

  /// One line per alternative, e.g. "Alternative A: 1.75% (increase). <rationale>".
  std::string describe() const;

 private:
  std::array<Alternative, 3> alts_;
};

struct ParsedAlternatives {
  AlternativeSet set;
  std::vector<std::string> warnings;
};

ParsedAlternatives parse_alternatives(std::string_view reply, PolicyRate current);

/// Reads the last "STANCE:" line.
VoteDirection parse_stance(std::string_view reply);

/// Reads the last "VOTE:" line. Without one, falls back to a single named
/// alternative ("Alternative B"), a bare label reply ("B"), or a single
/// direction phrase ("raise rates") mapped to the alternative with that
/// direction. More than one candidate is rejected as ambiguous.
AltLabel parse_vote(std::string_view reply, const AlternativeSet& alternatives);

}  // namespace fedsim
