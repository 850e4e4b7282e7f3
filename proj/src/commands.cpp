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

#include "fedsim/commands.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <thread>

#include "fedsim/evaluation.hpp"
#include "fedsim/persona.hpp"
#include "fedsim/text.hpp"
#include "fedsim/transcript.hpp"

namespace fedsim {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig resolve_config(const fs::path& config_path, const Overrides& overrides,
                         const EnvLookup& getenv) {
  RunConfig config = load_run_config(config_path);
  apply_env(config, getenv);
  if (overrides.output_dir) config.output_dir = *overrides.output_dir;
  if (overrides.backend) config.backend_kind = parse_backend_kind(*overrides.backend);
  if (overrides.model) config.backend.model = *overrides.model;
  if (overrides.endpoint) config.backend.endpoint = *overrides.endpoint;
  if (overrides.strict_probe) config.probe.strict = *overrides.strict_probe;
  if (overrides.probe_enabled) config.probe.enabled = *overrides.probe_enabled;
  config.validate();
  return config;
}

namespace {

std::string decided_text(const MeetingOutcome& o) {
  const auto& alt = o.decided_alternative();
  if (alt.direction == VoteDirection::Maintain) return "maintain at " + alt.target.percent();
  return std::string(to_string(alt.direction)) + " to " + alt.target.percent();
}

// Mutex-guarded line sink for the operator log shared by concurrent meetings.
class SharedLog {
 public:
  explicit SharedLog(std::ostream& os) : os_(os) {}
  void write(std::string_view line) {
    std::lock_guard lock(mu_);
    os_ << line << "\n";
  }

 private:
  std::ostream& os_;
  std::mutex mu_;
};

struct MeetingRun {
  MeetingDate date;
  bool ok = false;
  int exit_code = kExitOk;
  std::string message;
  std::optional<TranscriptFile> transcript;
  fs::path transcript_path;
};

struct Shared {
  const RunConfig& config;
  const TemplateSet& templates;
  const StopWords& stopwords;
  ChatBackend* live_backend;  // null: build one per meeting
};

// Runs one meeting and persists its transcript and operator log. Never throws.
MeetingRun run_one(const Shared& shared, const MeetingSpec& spec) {
  MeetingRun run;
  run.date = spec.date;
  std::string oplog;
  const LogFn log = [&](std::string_view line) {
    oplog += line;
    oplog += "\n";
  };
  const auto persist_log = [&] {
    try {
      write_file(shared.config.output_dir / ("meeting-" + spec.date.iso() + ".log"), oplog);
    } catch (const std::exception&) {
      // The transcript is what matters; a missing log is reported below anyway.
    }
  };

  try {
    const MeetingConfig mc = build_meeting_config(shared.config, spec);
    std::unique_ptr<ChatBackend> own;
    ChatBackend* backend = shared.live_backend;
    if (backend == nullptr) {
      own = make_backend(shared.config, &spec, log);
      backend = own.get();
    }

    TranscriptFile t;
    t.model = backend->model_name();
    t.template_checksums = shared.templates.checksums();
    log("meeting " + spec.date.iso() + " seed " + std::to_string(spec.seed) + " backend " +
        std::string(to_string(shared.config.backend_kind)));
    try {
      Meeting meeting(mc, *backend, shared.templates, shared.stopwords,
                      shared.config.engine_options(), log);
      t.outcome = meeting.run();
      run.ok = true;
    } catch (const StageError& e) {
      t.outcome = e.partial();
      t.failure = StageFailure{e.stage(), e.what()};
      run.exit_code = e.stage() == Stage::Probe ? kExitProbe : kExitStage;
      run.message = e.what();
    }
    run.transcript_path = transcript_path(shared.config.output_dir, spec.date);
    write_transcript(run.transcript_path, t);
    log("transcript written to " + run.transcript_path.string());
    run.transcript = std::move(t);
  } catch (const ConfigError& e) {
    run.exit_code = kExitConfig;
    run.message = e.what();
  } catch (const std::exception& e) {
    run.exit_code = kExitInternal;
    run.message = e.what();
  }
  if (!run.message.empty()) log("error: " + run.message);
  persist_log();
  return run;
}

struct Environment {
  RunConfig config;
  TemplateSet templates;
  StopWords stopwords;
  std::unique_ptr<ChatBackend> live;
};

Environment load_environment(const fs::path& config_path, const Overrides& overrides,
                             const EnvLookup& getenv, SharedLog* log) {
  Environment env{resolve_config(config_path, overrides, getenv), {}, {}, nullptr};
  env.templates = TemplateSet::load(env.config.templates_dir);
  env.stopwords = StopWords::load(env.config.stopwords);
  if (env.config.backend_kind != BackendKind::Scripted) {
    // Fails here, before any session opens, when the credential is missing.
    env.live = make_backend(env.config, nullptr,
                            log ? LogFn([log](std::string_view l) { log->write(l); }) : LogFn{});
  }
  return env;
}

}  // namespace

int cmd_run(const fs::path& config_path, const std::string& meeting, const Overrides& overrides,
            CommandIo io) {
  SharedLog oplog(io.err);
  try {
    auto env = load_environment(config_path, overrides, io.getenv, &oplog);
    MeetingSpec spec = env.config.meeting(MeetingDate::parse(meeting));
    if (overrides.seed) spec.seed = *overrides.seed;
    const auto run = run_one({env.config, env.templates, env.stopwords, env.live.get()}, spec);
    if (!run.ok) {
      io.err << "error: " << run.message << "\n";
      if (run.transcript) io.err << "partial transcript saved to " << run.transcript_path.string() << "\n";
      return run.exit_code;
    }
    io.out << "Transcript: " << run.transcript_path.string() << "\n";
    io.out << "Decided: " << decided_text(run.transcript->outcome) << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    io.err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_campaign(const fs::path& config_path, int parallel, const Overrides& overrides,
                 CommandIo io) {
  SharedLog oplog(io.err);
  try {
    if (parallel < 1) throw ConfigError("--parallel must be at least 1");
    auto env = load_environment(config_path, overrides, io.getenv, &oplog);
    const Shared shared{env.config, env.templates, env.stopwords, env.live.get()};
    const auto& meetings = env.config.meetings;
    std::vector<MeetingRun> runs(meetings.size());

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (std::size_t i = next++; i < meetings.size(); i = next++) {
        runs[i] = run_one(shared, meetings[i]);
        oplog.write("meeting " + meetings[i].date.iso() + (runs[i].ok ? " complete" : " failed: " + runs[i].message));
      }
    };
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(parallel), meetings.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    json summary;
    summary["meetings"] = json::array();
    int failures = 0;
    int worst = kExitOk;
    io.out << "Meeting   Status    Decided\n";
    for (const auto& r : runs) {
      json row = {{"date", r.date.iso()},
                  {"status", r.ok ? "complete" : "failed"},
                  {"transcript", r.transcript ? json(r.transcript_path.filename().string()) : json(nullptr)},
                  {"error", r.ok ? json(nullptr) : json(r.message)}};
      if (r.ok) {
        const auto& o = r.transcript->outcome;
        row["decided"] = to_string(*o.decided);
        row["decided_rate_bp"] = o.decided_rate->basis_points();
        row["current_rate_bp"] = o.current_rate.basis_points();
        io.out << r.date.iso() << "   complete  " << decided_text(o) << "\n";
      } else {
        ++failures;
        worst = worst == kExitOk ? r.exit_code : worst;
        io.out << r.date.iso() << "   failed    " << r.message << "\n";
      }
      summary["meetings"].push_back(row);
    }
    summary["failed"] = failures;
    write_file(env.config.output_dir / "campaign-summary.json", summary.dump(2) + "\n");
    io.out << (runs.size() - static_cast<std::size_t>(failures)) << " of " << runs.size()
           << " meetings complete\n";
    return failures == 0 ? kExitOk : worst;
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    io.err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_evaluate(const fs::path& transcripts_dir, const fs::path& ground_truth,
                 const std::string& format, CommandIo io) {
  try {
    if (format != "text" && format != "json") {
      io.err << "unknown format '" << format << "' (expected text or json)\n";
      return kExitConfig;
    }
    const auto truth = load_ground_truth(ground_truth);
    if (!fs::is_directory(transcripts_dir)) {
      throw EvaluationError("transcript directory not found: " + transcripts_dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(transcripts_dir)) {
      const auto name = entry.path().filename().string();
      if (entry.is_regular_file() && name.rfind("meeting-", 0) == 0 &&
          entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw EvaluationError("no transcripts in " + transcripts_dir.string());

    std::vector<SimulationRecord> sims;
    std::vector<std::string> skipped;
    for (const auto& f : files) {
      const auto t = read_transcript(f);
      if (!t.complete()) {
        skipped.push_back(f.filename().string() + " is a failed meeting; excluded");
        continue;
      }
      sims.push_back(simulation_record(t.outcome));
    }
    auto report = build_report(sims, truth);
    report.warnings.insert(report.warnings.begin(), skipped.begin(), skipped.end());
    for (const auto& w : report.warnings) io.err << "warning: " << w << "\n";
    if (format == "json") {
      io.out << to_json(report).dump(2) << "\n";
    } else {
      io.out << render_text(report);
    }
    return kExitOk;
  } catch (const TranscriptError& e) {
    io.err << "transcript error: " << e.what() << "\n";
    return kExitTranscript;
  } catch (const EvaluationError& e) {
    io.err << "evaluation error: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_probe(const fs::path& config_path, const std::string& meeting, bool contamination,
              const Overrides& overrides, CommandIo io) {
  SharedLog oplog(io.err);
  try {
    auto env = load_environment(config_path, overrides, io.getenv, &oplog);
    const auto& spec = env.config.meeting(MeetingDate::parse(meeting));
    const MeetingConfig mc = build_meeting_config(env.config, spec);
    std::unique_ptr<ChatBackend> own;
    ChatBackend* backend = env.live.get();
    if (backend == nullptr) {
      own = make_backend(env.config, &spec);
      backend = own.get();
    }

    if (contamination) {
      // A fresh session with no materials: anything specific in the answer
      // came from the model's training data.
      const auto& agent = mc.roster.agents().front();
      Session s = backend->open_session(
          agent.name, render_character_prompt(agent, mc.date, mc.current_rate, env.templates));
      const auto question = env.templates.text(tmpl::kContamination);
      const auto reply = backend->send(s, question);
      io.out << "== Question ==\n" << question << "\n\n";
      io.out << "== Model response ==\n" << reply << "\n\n";
      io.out << "== Reference excerpt ==\n";
      const Section* ref = nullptr;
      for (const auto& doc : mc.materials) {
        for (const auto& sec : doc.sections()) {
          if (ref == nullptr && contains_icase(sec.label, "cleveland")) ref = &sec;
        }
      }
      io.out << (ref ? ref->label + "\n" + ref->body : std::string("(no Cleveland section in the materials)"))
             << "\n";
      return kExitOk;
    }

    const MaterialDoc* doc = &mc.materials.front();
    for (const auto& d : mc.materials) {
      if (d.kind() == MaterialKind::BeigeBook) {
        doc = &d;
        break;
      }
    }
    auto opts = env.config.engine_options();
    bool all_passed = true;
    for (const auto& agent : mc.roster.agents()) {
      Session s = backend->open_session(
          agent.name, render_character_prompt(agent, mc.date, mc.current_rate, env.templates));
      cleanse_memory(*backend, s, mc.date, env.templates);
      for (const auto& d : mc.materials) feed_materials(*backend, s, d, env.templates, opts.feed);
      Rng rng = make_stream(mc.seed, "probe:" + agent.name);
      const auto r = comprehension_probe(*backend, s, *doc, rng, env.templates, env.stopwords, opts.probe);
      char score[16];
      std::snprintf(score, sizeof score, "%.3f", r.score);
      io.out << agent.name << ": district " << r.district << ", score " << score << ", attempts "
             << r.attempts << ", " << (r.passed ? "passed" : "failed") << "\n";
      all_passed = all_passed && r.passed;
    }
    if (!all_passed && env.config.probe.strict) {
      io.err << "strict probe: at least one agent failed\n";
      return kExitProbe;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    io.err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    io.err << "probe error: " << e.what() << "\n";
    return kExitStage;
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_replay(const fs::path& path, CommandIo io) {
  try {
    const auto t = read_transcript(path);
    const auto& o = t.outcome;
    io.out << "Meeting " << o.date.long_name() << ", current rate " << o.current_rate.percent()
           << ", seed " << o.seed << ", model " << t.model << "\n";
    std::optional<Stage> current;
    for (const auto& e : o.transcript) {
      if (!current || *current != e.stage) {
        current = e.stage;
        io.out << "\n== " << to_string(e.stage) << " ==\n";
      }
      io.out << "[" << e.turn_index << "] " << e.speaker;
      if (e.attempt > 1) io.out << " (attempt " << e.attempt << ")";
      if (e.confidential) io.out << " (confidential)";
      io.out << ":\n" << e.content << "\n";
      if (e.parsed_direction) io.out << "  stance: " << to_keyword(*e.parsed_direction) << "\n";
      if (e.vote && e.stage == Stage::Vote) io.out << "  vote: " << to_string(*e.vote) << "\n";
      if (!e.note.empty()) io.out << "  note: " << e.note << "\n";
    }
    if (t.failure) {
      io.out << "\nMeeting failed in " << to_string(t.failure->stage) << ": " << t.failure->message
             << "\n";
    }
    io.out << "\n== Tally ==\n";
    std::map<AltLabel, int> counts;
    for (auto l : kAltLabels) counts[l] = 0;
    if (o.tally) {
      counts = o.tally->counts;
    } else {
      for (const auto& v : o.final_votes) ++counts[v.choice];
    }
    for (const auto& [label, n] : counts) io.out << to_string(label) << ": " << n << "\n";
    if (o.decided) {
      io.out << "Decided: Alternative " << to_string(*o.decided) << ", " << decided_text(o);
      if (o.tally && o.tally->tie_break != TieBreak::None) {
        io.out << " (tie broken by " << to_string(o.tally->tie_break) << ")";
      }
      io.out << "\n";
    } else {
      io.out << "No decision\n";
    }
    return kExitOk;
  } catch (const TranscriptError& e) {
    io.err << "transcript error: " << e.what() << "\n";
    return kExitTranscript;
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace fedsim
