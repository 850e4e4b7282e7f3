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


#include "doctest.h"
#include "fedsim/text.hpp"
#include "fedsim/transcript.hpp"
#include "support.hpp"

using namespace fedsim;
using nlohmann::json;

namespace {

TranscriptFile small_transcript(bool probe = false) {
  auto config = testing::small_config(5, 11);
  config.probe_enabled = probe;
  Script script = testing::small_script(config);
  if (probe) {
    Script shifted;
    shifted.default_reply = script.default_reply;
    for (const auto& [k, v] : script.replies) shifted.replies[{k.first, k.second + 4}] = v;
    script = shifted;
  }
  ScriptedBackend backend(script);
  auto outcome = run_meeting(config, backend, testing::templates(), testing::stopwords());
  return {kTranscriptSchemaVersion, backend.model_name(), testing::templates().checksums(), {},
          std::move(outcome)};
}

}  // namespace

TEST_CASE("transcript round-trip is canonical") {
  for (bool probe : {false, true}) {
    const auto t = small_transcript(probe);
    const auto text = serialize_transcript(t);
    const auto back = parse_transcript(text);
    CHECK(serialize_transcript(back) == text);
    CHECK(back.outcome.transcript == t.outcome.transcript);
    CHECK(back.outcome.first_round_order == t.outcome.first_round_order);
    CHECK(back.outcome.debate_schedule.order == t.outcome.debate_schedule.order);
    CHECK(back.outcome.participants == t.outcome.participants);
    CHECK(back.outcome.materials == t.outcome.materials);
    CHECK(back.outcome.probes.size() == t.outcome.probes.size());
    CHECK(back.template_checksums == t.template_checksums);
    CHECK(back.complete());
    CHECK(text.back() == '\n');
  }
}

TEST_CASE("write and read through the filesystem") {
  const auto dir = testing::temp_dir("transcript-io");
  const auto t = small_transcript();
  const auto path = transcript_path(dir, t.outcome.date);
  CHECK(path.filename() == "meeting-2018-05.json");
  write_transcript(path, t);
  const auto back = read_transcript(path);
  CHECK(serialize_transcript(back) == read_file(path));
}

TEST_CASE("failed transcripts keep the failure and the partial outcome") {
  auto t = small_transcript();
  t.failure = StageFailure{Stage::Debate, "agent 'V3' gave no usable reply"};
  t.outcome.decided.reset();
  t.outcome.decided_rate.reset();
  t.outcome.tally.reset();
  const auto back = parse_transcript(serialize_transcript(t));
  REQUIRE(back.failure.has_value());
  CHECK(*back.failure == *t.failure);
  CHECK_FALSE(back.complete());
  const auto j = json::parse(serialize_transcript(t));
  CHECK(j.at("status") == "failed");
  CHECK(j.at("tally").is_null());
}

TEST_CASE("truncated transcripts report a byte offset") {
  const auto text = serialize_transcript(small_transcript());
  const auto cut = text.substr(0, text.size() / 2);
  try {
    parse_transcript(cut);
    FAIL("expected TranscriptError");
  } catch (const TranscriptError& e) {
    REQUIRE(e.byte_offset().has_value());
    CHECK(*e.byte_offset() > 0);
    CHECK(*e.byte_offset() <= cut.size() + 1);
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  const auto dir = testing::temp_dir("transcript-cut");
  write_file(dir / "meeting-2018-05.json", cut);
  try {
    read_transcript(dir / "meeting-2018-05.json");
    FAIL("expected TranscriptError");
  } catch (const TranscriptError& e) {
    CHECK(e.byte_offset().has_value());
    CHECK(std::string(e.what()).find("meeting-2018-05.json") != std::string::npos);
  }
}

TEST_CASE("unknown schema versions name the found and expected versions") {
  auto j = json::parse(serialize_transcript(small_transcript()));
  j["schema_version"] = 99;
  CHECK_THROWS_WITH_AS(transcript_from_json(j), doctest::Contains("99"), TranscriptError);
  CHECK_THROWS_WITH_AS(transcript_from_json(j), doctest::Contains("expected 1"), TranscriptError);
  j.erase("schema_version");
  CHECK_THROWS_AS(transcript_from_json(j), TranscriptError);
}

TEST_CASE("out-of-order or malformed events are rejected") {
  const auto good = json::parse(serialize_transcript(small_transcript()));
  auto j = good;
  std::swap(j["events"][3], j["events"][4]);
  CHECK_THROWS_WITH_AS(transcript_from_json(j), doctest::Contains("turn_index"), TranscriptError);
  j = good;
  j["events"][0]["stage"] = "lunch";
  CHECK_THROWS_AS(transcript_from_json(j), TranscriptError);
  j = good;
  j["final_votes"][0]["choice"] = "D";
  CHECK_THROWS_AS(transcript_from_json(j), TranscriptError);
  j = good;
  j.erase("events");
  CHECK_THROWS_AS(transcript_from_json(j), TranscriptError);
  CHECK_THROWS_AS(read_transcript(testing::temp_dir("transcript-missing") / "x.json"), TranscriptError);
}
