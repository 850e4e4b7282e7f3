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

#include "fedsim/types.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

#include "fedsim/error.hpp"
#include "fedsim/text.hpp"

namespace fedsim {
namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

// Renders |bp| as a percent string with `min_decimals` kept.
std::string bp_to_percent(int bp, int min_decimals) {
  const bool negative = bp < 0;
  const int abs_bp = negative ? -bp : bp;
  std::string frac = std::to_string(abs_bp % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  while (static_cast<int>(frac.size()) > min_decimals && frac.back() == '0') frac.pop_back();
  std::string out = negative ? "-" : "";
  out += std::to_string(abs_bp / 100);
  if (!frac.empty()) out += "." + frac;
  return out;
}

}  // namespace

MeetingDate MeetingDate::parse(std::string_view text) {
  const auto trimmed = trim(text);
  if (trimmed.size() != 7 || trimmed[4] != '-' || !all_digits(trimmed.substr(0, 4)) ||
      !all_digits(trimmed.substr(5, 2))) {
    throw ParseError("invalid meeting date '" + std::string(text) + "', expected YYYY-MM");
  }
  MeetingDate d{to_int(trimmed.substr(0, 4)), to_int(trimmed.substr(5, 2))};
  if (d.month < 1 || d.month > 12) {
    throw ParseError("invalid month in meeting date '" + std::string(text) + "'");
  }
  return d;
}

std::string MeetingDate::iso() const {
  std::string m = std::to_string(month);
  if (m.size() < 2) m.insert(0, "0");
  return std::to_string(year) + "-" + m;
}

std::string MeetingDate::long_name() const {
  return std::string(kMonthNames.at(month - 1)) + " " + std::to_string(year);
}

std::string MeetingDate::short_name() const {
  std::string_view name = kMonthNames.at(month - 1);
  std::string out = name.size() <= 4 ? std::string(name) : std::string(name.substr(0, 3)) + ".";
  return out + " " + std::to_string(year);
}

std::string_view to_string(VoteDirection d) {
  switch (d) {
    case VoteDirection::Increase: return "increase";
    case VoteDirection::Maintain: return "maintain";
    case VoteDirection::Decrease: return "decrease";
  }
  return "maintain";
}

std::string_view to_keyword(VoteDirection d) {
  switch (d) {
    case VoteDirection::Increase: return "INCREASE";
    case VoteDirection::Maintain: return "MAINTAIN";
    case VoteDirection::Decrease: return "DECREASE";
  }
  return "MAINTAIN";
}

std::string_view to_arrow(VoteDirection d) {
  switch (d) {
    case VoteDirection::Increase: return "↑";
    case VoteDirection::Maintain: return "→";
    case VoteDirection::Decrease: return "↓";
  }
  return "→";
}

std::optional<VoteDirection> parse_direction(std::string_view text) {
  const std::string lower = to_lower(trim(text));
  if (lower == "increase") return VoteDirection::Increase;
  if (lower == "maintain") return VoteDirection::Maintain;
  if (lower == "decrease") return VoteDirection::Decrease;
  return std::nullopt;
}

PolicyRate::PolicyRate(int basis_points) : bp_(basis_points) {
  if (basis_points < 0) {
    throw ValidationError("policy rate must be non-negative, got " + std::to_string(basis_points) +
                          " bp");
  }
  if (basis_points % 25 != 0) {
    throw ValidationError("policy rate must be a multiple of 25 bp, got " +
                          std::to_string(basis_points) + " bp");
  }
}

PolicyRate PolicyRate::parse_percent(std::string_view text) {
  auto s = trim(text);
  if (!s.empty() && s.back() == '%') s = trim(s.substr(0, s.size() - 1));
  const auto dot = s.find('.');
  const auto whole = s.substr(0, dot);
  auto frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (!all_digits(whole) || (dot != std::string_view::npos && !all_digits(frac))) {
    throw ParseError("invalid rate '" + std::string(text) + "'");
  }
  while (frac.size() > 2 && frac.back() == '0') frac.remove_suffix(1);
  if (frac.size() > 2) {
    throw ParseError("rate '" + std::string(text) + "' is finer than one basis point");
  }
  int bp = to_int(whole) * 100;
  if (frac.size() == 1) bp += to_int(frac) * 10;
  if (frac.size() == 2) bp += to_int(frac);
  if (bp % 25 != 0) {
    throw ParseError("rate '" + std::string(text) + "' is not a quarter-point multiple");
  }
  return PolicyRate(bp);
}

std::string PolicyRate::percent() const { return bp_to_percent(bp_, 2) + "%"; }

std::string PolicyRate::percent_short() const { return bp_to_percent(bp_, 1) + "%"; }

VoteDirection direction_between(PolicyRate current, PolicyRate target) {
  if (target > current) return VoteDirection::Increase;
  if (target < current) return VoteDirection::Decrease;
  return VoteDirection::Maintain;
}

std::string format_gap(int gap_bp) {
  if (gap_bp == 0) return "0";
  return bp_to_percent(gap_bp, 0) + "%";
}

}  // namespace fedsim
