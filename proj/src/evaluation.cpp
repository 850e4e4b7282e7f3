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

#include "fedsim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "fedsim/text.hpp"

namespace fedsim {

using nlohmann::json;

MemberVotes::MemberVotes(std::vector<MemberDirection> votes) : votes_(std::move(votes)) {
  std::set<std::string> seen;
  for (const auto& v : votes_) {
    if (!seen.insert(v.name).second) throw ValidationError("member '" + v.name + "' listed twice");
  }
}

std::optional<VoteDirection> MemberVotes::find(std::string_view name) const {
  for (const auto& v : votes_) {
    if (v.name == name) return v.direction;
  }
  return std::nullopt;
}

namespace {

void validate_record(const MeetingDate& date, PolicyRate prev, PolicyRate next,
                     const MemberVotes& votes) {
  if (std::abs(next.basis_points() - prev.basis_points()) > kMaxAlternativeStepBp) {
    throw ValidationError("meeting " + date.iso() + " moves the rate by more than " +
                          std::to_string(kMaxAlternativeStepBp) + " bp");
  }
  if (votes.empty()) throw ValidationError("meeting " + date.iso() + " has no member votes");
}

}  // namespace

void GroundTruthRecord::validate() const { validate_record(date, prev_rate, new_rate, member_votes); }
void SimulationRecord::validate() const { validate_record(date, prev_rate, new_rate, member_votes); }

SimulationRecord simulation_record(const MeetingOutcome& outcome) {
  if (!outcome.complete() || !outcome.alternatives) {
    throw EvaluationError("meeting " + outcome.date.iso() + " has no decision");
  }
  SimulationRecord r;
  r.date = outcome.date;
  r.prev_rate = outcome.current_rate;
  r.new_rate = *outcome.decided_rate;
  r.decided_direction = outcome.decided_alternative().direction;
  std::vector<MemberDirection> votes;
  for (const auto& v : outcome.final_votes) {
    votes.push_back({v.agent_name, outcome.alternatives->at(v.choice).direction});
  }
  r.member_votes = MemberVotes(std::move(votes));
  std::vector<MemberDirection> ideas;
  for (const auto& p : outcome.private_ideas) ideas.push_back({p.agent_name, p.direction});
  r.initial_ideas = MemberVotes(std::move(ideas));
  r.validate();
  return r;
}

GroundTruth ground_truth_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != 1) {
      throw EvaluationError("unsupported ground truth schema_version " +
                            j.at("schema_version").dump());
    }
    GroundTruth truth;
    for (const auto& m : j.at("meetings")) {
      GroundTruthRecord r;
      r.date = MeetingDate::parse(m.at("date").get<std::string>());
      r.prev_rate = PolicyRate::parse_percent(m.at("prev_rate").get<std::string>());
      r.new_rate = PolicyRate::parse_percent(m.at("new_rate").get<std::string>());
      std::vector<MemberDirection> votes;
      for (const auto& v : m.at("members")) {
        const auto d = parse_direction(v.at("direction").get<std::string>());
        if (!d) throw ParseError("unknown direction " + v.at("direction").dump());
        votes.push_back({v.at("name").get<std::string>(), *d});
      }
      r.member_votes = MemberVotes(std::move(votes));
      r.validate();
      truth.meetings.push_back(std::move(r));
    }
    if (j.contains("published_alignment_percent")) {
      truth.published_alignment = j.at("published_alignment_percent").get<PublishedRates>();
    }
    return truth;
  } catch (const EvaluationError&) {
    throw;
  } catch (const json::exception& e) {
    throw EvaluationError(std::string("malformed ground truth: ") + e.what());
  } catch (const Error& e) {
    throw EvaluationError(std::string("invalid ground truth: ") + e.what());
  }
}

json to_json(const GroundTruth& truth) {
  json j;
  j["schema_version"] = 1;
  j["meetings"] = json::array();
  for (const auto& r : truth.meetings) {
    json members = json::array();
    for (const auto& v : r.member_votes.all()) {
      members.push_back({{"name", v.name}, {"direction", to_string(v.direction)}});
    }
    j["meetings"].push_back({{"date", r.date.iso()},
                             {"prev_rate", r.prev_rate.percent()},
                             {"new_rate", r.new_rate.percent()},
                             {"members", members}});
  }
  j["published_alignment_percent"] = truth.published_alignment;
  return j;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw EvaluationError("ground truth file not found: " + path.string());
  }
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw EvaluationError(path.string() + ": invalid JSON at byte " + std::to_string(e.byte));
  }
  return ground_truth_from_json(j);
}

std::string Fraction::percent_1dp() const {
  // round(1000 * num / den) / 10, half up, without floating point.
  const std::int64_t tenths = (2000 * num + den) / (2 * den);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

int alignment_indicator(VoteDirection sim, VoteDirection real) { return sim == real ? 1 : 0; }

Pairing pair_records(std::span<const SimulationRecord> sims,
                     std::span<const GroundTruthRecord> truths) {
  std::map<MeetingDate, const SimulationRecord*> by_date;
  for (const auto& s : sims) {
    if (!by_date.emplace(s.date, &s).second) {
      throw PairingError("two simulation records for meeting " + s.date.iso());
    }
  }
  Pairing p;
  std::set<MeetingDate> truth_dates;
  for (const auto& t : truths) {
    if (!truth_dates.insert(t.date).second) {
      throw PairingError("two ground truth records for meeting " + t.date.iso());
    }
    const auto it = by_date.find(t.date);
    if (it == by_date.end()) {
      p.unpaired_truths.push_back(t.date);
    } else {
      p.pairs.emplace_back(it->second, &t);
    }
  }
  for (const auto& s : sims) {
    if (!truth_dates.count(s.date)) p.unpaired_sims.push_back(s.date);
  }
  std::sort(p.pairs.begin(), p.pairs.end(),
            [](const auto& a, const auto& b) { return a.first->date < b.first->date; });
  std::sort(p.unpaired_sims.begin(), p.unpaired_sims.end());
  std::sort(p.unpaired_truths.begin(), p.unpaired_truths.end());
  return p;
}

AgentAlignment alignment_rate(const std::string& agent, std::span<const SimulationRecord> sims,
                              std::span<const GroundTruthRecord> truths) {
  const auto pairing = pair_records(sims, truths);
  AgentAlignment out;
  out.agent = agent;
  out.rate = {0, 0};
  for (const auto& [sim, truth] : pairing.pairs) {
    const auto s = sim->member_votes.find(agent);
    const auto r = truth->member_votes.find(agent);
    if (!s || !r) continue;
    out.rate.num += alignment_indicator(*s, *r);
    ++out.rate.den;
  }
  if (out.rate.den == 0) {
    throw EvaluationError("alignment rate for '" + agent +
                          "' is undefined: the agent took part in no paired meeting");
  }
  return out;
}

int rate_gap_bp(const SimulationRecord& sim, const GroundTruthRecord& truth) {
  if (sim.date != truth.date) {
    throw PairingError("cannot compare meeting " + sim.date.iso() + " with " + truth.date.iso());
  }
  return sim.new_rate.basis_points() - truth.new_rate.basis_points();
}

double rate_gap(const SimulationRecord& sim, const GroundTruthRecord& truth) {
  return rate_gap_bp(sim, truth) / 100.0;
}

std::string MseResult::display() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", value());
  return buf;
}

namespace {

Pairing require_pairs(std::span<const SimulationRecord> sims,
                      std::span<const GroundTruthRecord> truths) {
  auto p = pair_records(sims, truths);
  if (p.pairs.empty()) throw PairingError("no simulated meeting matches a ground truth meeting");
  return p;
}

}  // namespace

MseResult mse(std::span<const SimulationRecord> sims, std::span<const GroundTruthRecord> truths) {
  const auto p = require_pairs(sims, truths);
  MseResult r;
  for (const auto& [sim, truth] : p.pairs) {
    const std::int64_t g = rate_gap_bp(*sim, *truth);
    r.sum_squared_bp += g * g;
    ++r.meetings;
  }
  return r;
}

Fraction agreement_rate(std::span<const SimulationRecord> sims,
                        std::span<const GroundTruthRecord> truths) {
  const auto p = require_pairs(sims, truths);
  Fraction f{0, 0};
  for (const auto& [sim, truth] : p.pairs) {
    f.num += sim->new_rate == truth->new_rate ? 1 : 0;
    ++f.den;
  }
  return f;
}

EvaluationReport build_report(std::span<const SimulationRecord> sims, const GroundTruth& truth) {
  const std::span<const GroundTruthRecord> truths(truth.meetings);
  const auto pairing = require_pairs(sims, truths);
  EvaluationReport report;
  for (const auto& d : pairing.unpaired_sims) {
    report.warnings.push_back("simulated meeting " + d.iso() + " has no ground truth; excluded");
  }
  for (const auto& d : pairing.unpaired_truths) {
    report.warnings.push_back("ground truth meeting " + d.iso() + " has no simulation; excluded");
  }
  report.mse = mse(sims, truths);
  report.agreement = agreement_rate(sims, truths);

  std::vector<const GroundTruthRecord*> by_date;
  for (const auto& t : truth.meetings) by_date.push_back(&t);
  std::sort(by_date.begin(), by_date.end(),
            [](const auto* x, const auto* y) { return x->date < y->date; });
  std::vector<std::string> agents;
  for (const auto* t : by_date) {
    for (const auto& v : t->member_votes.all()) {
      if (std::find(agents.begin(), agents.end(), v.name) == agents.end()) agents.push_back(v.name);
    }
  }
  for (const auto& agent : agents) {
    AgentAlignment a;
    try {
      a = alignment_rate(agent, sims, truths);
    } catch (const PairingError&) {
      throw;
    } catch (const EvaluationError&) {
      report.warnings.push_back("no paired meeting for " + agent + "; alignment rate undefined");
      continue;
    }
    if (const auto it = truth.published_alignment.find(agent); it != truth.published_alignment.end()) {
      a.published_percent = it->second;
      const double recomputed = std::round(a.rate.value() * 1000.0) / 10.0;
      a.discrepancy = std::abs(recomputed - it->second) > 0.05 + 1e-9;
      if (a.discrepancy) {
        char pub[32];
        std::snprintf(pub, sizeof pub, "%.1f%%", it->second);
        report.warnings.push_back("published alignment rate for " + agent + " is " + pub +
                                  " but the per-meeting votes give " +
                                  std::to_string(a.rate.num) + "/" + std::to_string(a.rate.den) +
                                  " = " + a.rate.percent_1dp());
      }
    }
    report.alignment.push_back(std::move(a));
  }

  for (const auto& [sim, real] : pairing.pairs) {
    MeetingRow row;
    row.date = sim->date;
    row.sim_prev = sim->prev_rate;
    row.sim_new = sim->new_rate;
    row.real_prev = real->prev_rate;
    row.real_new = real->new_rate;
    row.gap_bp = rate_gap_bp(*sim, *real);
    for (const auto& v : real->member_votes.all()) {
      row.members.push_back({v.name, sim->initial_ideas.find(v.name), sim->member_votes.find(v.name),
                             v.direction});
    }
    report.meetings.push_back(std::move(row));
  }
  return report;
}

namespace {

// Display width in code points, so arrows count as one column.
std::size_t width(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) n += (static_cast<unsigned char>(c) & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows) {
    widths.resize(std::max(widths.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], width(r[i]));
  }
  std::string out;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    std::string line;
    for (std::size_t i = 0; i < rows[ri].size(); ++i) {
      if (i > 0) line += "  ";
      line += rows[ri][i];
      if (i + 1 < rows[ri].size()) line += std::string(widths[i] - width(rows[ri][i]), ' ');
    }
    out += line + "\n";
    if (ri == 0) {
      std::size_t total = 0;
      for (auto w : widths) total += w;
      out += std::string(total + 2 * (widths.size() - 1), '-') + "\n";
    }
  }
  return out;
}

std::string transition(PolicyRate a, PolicyRate b) {
  return a.percent_short() + " → " + b.percent_short();
}

std::string arrow(const std::optional<VoteDirection>& d) {
  return d ? std::string(to_arrow(*d)) : "-";
}

}  // namespace

std::string render_text(const EvaluationReport& report) {
  std::ostringstream out;
  out << "Alignment rate per agent\n\n";
  std::vector<std::vector<std::string>> t1 = {{"Agent", "Aligned", "Meetings", "AR", "Published"}};
  for (const auto& a : report.alignment) {
    std::string pub = "-";
    if (a.published_percent) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f%%", *a.published_percent);
      pub = buf;
      if (a.discrepancy) pub += " (differs)";
    }
    t1.push_back({a.agent, std::to_string(a.rate.num), std::to_string(a.rate.den),
                  a.rate.percent_1dp(), pub});
  }
  out << render_table(t1) << "\n";

  out << "Meeting results\n\n";
  std::vector<std::vector<std::string>> t2 = {{"Meeting", "Simulated", "Real", "Gap"}};
  for (const auto& m : report.meetings) {
    t2.push_back({m.date.short_name(), transition(m.sim_prev, m.sim_new),
                  transition(m.real_prev, m.real_new), format_gap(m.gap_bp)});
  }
  out << render_table(t2) << "\n";
  out << "MSE: " << report.mse.display() << " (squared percentage points, "
      << report.mse.sum_squared_bp << " bp^2 over " << report.mse.meetings << " meetings)\n";
  out << "Agreement: " << report.agreement.num << "/" << report.agreement.den << " = "
      << report.agreement.percent_1dp() << "\n\n";

  out << "Member directions (initial / final / real)\n\n";
  for (const auto& m : report.meetings) {
    std::vector<std::vector<std::string>> t4 = {{m.date.short_name(), "Initial", "Final", "Real"}};
    for (const auto& mem : m.members) {
      t4.push_back({mem.name, arrow(mem.initial), arrow(mem.final_vote),
                    std::string(to_arrow(mem.real))});
    }
    out << render_table(t4) << "\n";
  }

  if (!report.warnings.empty()) {
    out << "Warnings\n\n";
    for (const auto& w : report.warnings) out << "- " << w << "\n";
  }
  return out.str();
}

json to_json(const EvaluationReport& report) {
  json j;
  j["alignment"] = json::array();
  for (const auto& a : report.alignment) {
    j["alignment"].push_back({{"agent", a.agent},
                              {"aligned", a.rate.num},
                              {"meetings", a.rate.den},
                              {"rate", a.rate.value()},
                              {"display", a.rate.percent_1dp()},
                              {"published_percent",
                               a.published_percent ? json(*a.published_percent) : json(nullptr)},
                              {"discrepancy", a.discrepancy}});
  }
  j["meetings"] = json::array();
  for (const auto& m : report.meetings) {
    json members = json::array();
    for (const auto& mem : m.members) {
      members.push_back(
          {{"name", mem.name},
           {"initial", mem.initial ? json(to_string(*mem.initial)) : json(nullptr)},
           {"final", mem.final_vote ? json(to_string(*mem.final_vote)) : json(nullptr)},
           {"real", to_string(mem.real)}});
    }
    j["meetings"].push_back({{"date", m.date.iso()},
                             {"simulated", transition(m.sim_prev, m.sim_new)},
                             {"real", transition(m.real_prev, m.real_new)},
                             {"sim_new_rate_bp", m.sim_new.basis_points()},
                             {"real_new_rate_bp", m.real_new.basis_points()},
                             {"gap_bp", m.gap_bp},
                             {"gap_pp", m.gap_bp / 100.0},
                             {"members", members}});
  }
  j["mse"] = {{"squared_percentage_points", report.mse.value()},
              {"display", report.mse.display()},
              {"sum_squared_bp", report.mse.sum_squared_bp},
              {"meetings", report.mse.meetings}};
  j["agreement"] = {{"identical", report.agreement.num},
                    {"meetings", report.agreement.den},
                    {"rate", report.agreement.value()}};
  j["warnings"] = report.warnings;
  return j;
}

}  // namespace fedsim
