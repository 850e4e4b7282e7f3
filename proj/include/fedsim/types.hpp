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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fedsim {

/// Calendar month of a meeting. Serialized as "YYYY-MM".
struct MeetingDate {
  int year = 2018;
  int month = 1;  // 1..12

  static MeetingDate parse(std::string_view text);  // "2018-05"

  std::string iso() const;         // "2018-05"
  std::string long_name() const;   // "May 2018", "September 2018"
  std::string short_name() const;  // "May 2018", "Sep. 2018"

  auto operator<=>(const MeetingDate&) const = default;
};

enum class VoteDirection { Increase, Maintain, Decrease };

std::string_view to_string(VoteDirection d);  // "increase" / "maintain" / "decrease"
std::string_view to_keyword(VoteDirection d); // "INCREASE" / ...
std::string_view to_arrow(VoteDirection d);   // U+2191 / U+2192 / U+2193
std::optional<VoteDirection> parse_direction(std::string_view text);

/// Fed Funds target (lower bound) in basis points; always a quarter-point multiple.
class PolicyRate {
 public:
  PolicyRate() = default;
  explicit PolicyRate(int basis_points);

  /// Accepts "1.5", "1.50", "1.50%", "2". Exact decimal conversion, no floating point.
  static PolicyRate parse_percent(std::string_view text);

  int basis_points() const noexcept { return bp_; }

  /// Two decimals: "1.50%".
  std::string percent() const;
  /// Table style, at least one decimal: "1.5%", "2.0%", "1.25%".
  std::string percent_short() const;

  auto operator<=>(const PolicyRate&) const = default;

 private:
  int bp_ = 0;
};

/// Direction of a move from `current` to `target`.
VoteDirection direction_between(PolicyRate current, PolicyRate target);

/// Signed basis points rendered as percentage points in table style: "0.25%", "-0.25%", "0".
std::string format_gap(int gap_bp);

}  // namespace fedsim
