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

// fedsim: run simulated committee meetings and score them.
//
// Exit codes: 0 success, 1 internal error, 2 config error, 3 stage error,
// 4 evaluation error, 5 strict probe failure, 6 transcript error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fedsim/commands.hpp"

namespace {

void add_overrides(CLI::App* cmd, std::string& output_dir,
                   std::string& backend, std::string& model, std::string& endpoint) {
  cmd->add_option("--output-dir", output_dir, "Directory for transcripts and logs");
  cmd->add_option("--backend", backend, "scripted, recall or openai");
  cmd->add_option("--model", model, "Model name for the live backend");
  cmd->add_option("--endpoint", endpoint, "Chat-completions URL for the live backend");
}

void finish_overrides(fedsim::Overrides& o, const std::string& output_dir, const std::string& backend,
                      const std::string& model, const std::string& endpoint) {
  if (!output_dir.empty()) o.output_dir = output_dir;
  if (!backend.empty()) o.backend = backend;
  if (!model.empty()) o.model = model;
  if (!endpoint.empty()) o.endpoint = endpoint;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated monetary-policy committee meetings"};
  app.require_subcommand(1);

  fedsim::Overrides overrides;
  std::string output_dir, backend, model, endpoint;
  std::string config_path, meeting;
  std::uint64_t seed = 0;
  int parallel = 1;
  bool strict_probe = false;
  bool contamination = false;
  bool probe_flag = false;
  std::string transcripts_dir, ground_truth, format = "text", transcript;

  auto* run = app.add_subcommand("run", "Run one meeting");
  run->add_option("--config", config_path, "Run config file")->required();
  run->add_option("--meeting", meeting, "Meeting date, YYYY-MM")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the meeting seed");
  run->add_flag("--probe", probe_flag, "Run the comprehension probe for every agent");
  run->add_flag("--strict-probe", strict_probe, "Abort the meeting when a probe fails");
  add_overrides(run, output_dir, backend, model, endpoint);

  auto* campaign = app.add_subcommand("campaign", "Run every meeting in the config");
  campaign->add_option("--config", config_path, "Run config file")->required();
  campaign->add_option("--parallel", parallel, "Meetings to run at once")->check(CLI::PositiveNumber);
  campaign->add_flag("--probe", probe_flag, "Run the comprehension probe for every agent");
  campaign->add_flag("--strict-probe", strict_probe, "Abort a meeting when a probe fails");
  add_overrides(campaign, output_dir, backend, model, endpoint);

  auto* evaluate = app.add_subcommand("evaluate", "Score transcripts against real decisions");
  evaluate->add_option("--transcripts", transcripts_dir, "Directory of meeting transcripts")->required();
  evaluate->add_option("--ground-truth", ground_truth, "Ground truth file")->required();
  evaluate->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* probe = app.add_subcommand("probe", "Check material comprehension or training contamination");
  probe->add_option("--config", config_path, "Run config file")->required();
  probe->add_option("--meeting", meeting, "Meeting date, YYYY-MM")->required();
  probe->add_flag("--contamination", contamination, "Ask the contamination question on a fresh session");
  probe->add_flag("--strict-probe", strict_probe, "Exit nonzero when any agent fails");
  add_overrides(probe, output_dir, backend, model, endpoint);

  auto* replay = app.add_subcommand("replay", "Print a transcript stage by stage");
  replay->add_option("transcript", transcript, "Transcript file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fedsim::kExitConfig;
  }

  finish_overrides(overrides, output_dir, backend, model, endpoint);
  if (strict_probe) overrides.strict_probe = true;
  if (probe_flag || strict_probe) overrides.probe_enabled = true;
  if (*seed_opt) overrides.seed = seed;

  fedsim::CommandIo io{std::cout, std::cerr, [](const char* name) { return std::getenv(name); }};
  if (*run) return fedsim::cmd_run(config_path, meeting, overrides, io);
  if (*campaign) return fedsim::cmd_campaign(config_path, parallel, overrides, io);
  if (*evaluate) return fedsim::cmd_evaluate(transcripts_dir, ground_truth, format, io);
  if (*probe) return fedsim::cmd_probe(config_path, meeting, contamination, overrides, io);
  if (*replay) return fedsim::cmd_replay(transcript, io);
  return fedsim::kExitInternal;
}
