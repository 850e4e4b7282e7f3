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


// Shared fixtures for the unit and acceptance tests.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fedsim/engine.hpp"
#include "fedsim/materials.hpp"
#include "fedsim/persona.hpp"
#include "fedsim/scripted_backend.hpp"
#include "fedsim/templates.hpp"

namespace fedsim::testing {

inline std::filesystem::path source_dir() { return FEDSIM_SOURCE_DIR; }
inline std::filesystem::path data_dir() { return source_dir() / "data"; }
inline std::filesystem::path fixtures_dir() { return data_dir() / "fixtures"; }

const TemplateSet& templates();
const StopWords& stopwords();

AgentProfile voter(std::string name, Role role = Role::Governor);
AgentProfile economist(std::string name = "Econ");
AgentProfile legal(std::string name = "Counsel");

/// Chair "Chair", vice chair "Vice", then governors "V3".."Vn"; plus economist and legal.
Roster small_roster(int voters);

/// Two-section Beige Book.
MaterialDoc small_doc(MeetingDate date = {2018, 5});

MeetingConfig small_config(int voters, std::uint64_t seed, int turns_per_voter = 3);

/// Script for small_config: economist proposes 175/150/125 around 150 bp, the
/// legal expert addresses A/B/C, voters state `stance` everywhere and vote `vote`.
/// Every voter reply is unique so confidentiality checks are meaningful.
Script small_script(const MeetingConfig& config, VoteDirection stance = VoteDirection::Maintain,
                    char vote = 'B');

/// The 2018 fixture campaign's meeting config and script for one date ("2018-05").
MeetingConfig fixture_meeting(const std::string& date);
Script fixture_script(const std::string& date);

/// Fresh temporary directory under the build tree.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace fedsim::testing
