// Copyright 2026 The stalloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stalloc/cli.hpp"
#include "stalloc/generate.hpp"
#include "stalloc/io.hpp"
#include "test_instances.hpp"

using namespace stalloc;
using namespace stalloc::testing;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CliRun {
  int exit_code = 0;
  std::string out;
  std::string err;

  ordered_json json() const { return ordered_json::parse(out); }
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun result;
  result.exit_code = cli::run(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  std::filesystem::path path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("parse and serialize round-trip the tiny instance") {
  std::string text = serialize_instance(tiny());
  Instance parsed = parse_instance(text);
  CHECK(parsed.num_jobs() == 1);
  CHECK(serialize_instance(parsed) == text);
}

TEST_CASE("serialization is canonical and idempotent on all fixtures") {
  for (const Instance& inst :
       {tiny(), fig1(), fig2ul(), fig2ll(), fig2mid(), fig2r()}) {
    std::string once = serialize_instance(inst);
    std::string twice = serialize_instance(parse_instance(once));
    CHECK(once == twice);
  }
}

TEST_CASE("shipped fixture files match the in-code instances") {
  CHECK(parse_instance(read_file(fixture_path("fig1.json"))).to_raw().jobs ==
        raw_fig1().jobs);
  struct Pair {
    const char* file;
    RawInstance raw;
  };
  for (const auto& [file, raw] :
       {Pair{"fig1.json", raw_fig1()}, Pair{"fig2ul.json", raw_fig2ul()},
        Pair{"fig2ll.json", raw_fig2ll()}, Pair{"fig2mid.json", raw_fig2mid()},
        Pair{"fig2r.json", raw_fig2r()}}) {
    Instance parsed = parse_instance(read_file(fixture_path(file)));
    Instance expected = validate_instance(raw);
    CHECK(serialize_instance(parsed).find("\"comment\"") != std::string::npos);
    RawInstance a = parsed.to_raw();
    RawInstance b = expected.to_raw();
    REQUIRE(a.jobs.size() == b.jobs.size());
    for (size_t i = 0; i < a.jobs.size(); ++i) {
      CHECK(a.jobs[i].id == b.jobs[i].id);
      CHECK(a.jobs[i].size == b.jobs[i].size);
      CHECK(a.jobs[i].prefs == b.jobs[i].prefs);
    }
    REQUIRE(a.machines.size() == b.machines.size());
    for (size_t i = 0; i < a.machines.size(); ++i) {
      CHECK(a.machines[i].id == b.machines[i].id);
      CHECK(a.machines[i].capacity == b.machines[i].capacity);
      CHECK(a.machines[i].prefs == b.machines[i].prefs);
    }
  }
}

TEST_CASE("parse_instance reports syntax and schema errors") {
  CHECK_THROWS_AS(parse_instance("{ not json"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"jobs": []})"), Error);  // machines missing
  CHECK_THROWS_AS(
      parse_instance(
          R"({"jobs": [], "machines": [], "unexpected": 1})"),
      Error);
  CHECK_THROWS_AS(
      parse_instance(
          R"({"jobs": [{"id": "j1", "size": 0, "prefs": []}], "machines": []})"),
      Error);  // NonPositiveSize surfaces through parsing
}

TEST_CASE("generate_instance is deterministic and honors density") {
  GenerateParams params{2, 2, 1, 1, 1.0, 7};
  std::string a = serialize_instance(generate_instance(params));
  std::string b = serialize_instance(generate_instance(params));
  CHECK(a == b);

  Instance complete = generate_instance(params);
  CHECK(complete.num_edges() == 4);

  GenerateParams bigger{6, 4, 3, 3, 0.8, 1};
  Instance inst = generate_instance(bigger);  // validates internally
  CHECK(inst.num_jobs() == 6);
  CHECK(inst.num_machines() == 4);

  CHECK_THROWS_AS(generate_instance(GenerateParams{0, 1, 1, 1, 1.0, 0}), Error);
  CHECK_THROWS_AS(generate_instance(GenerateParams{1, 1, 1, 1, 0.0, 0}), Error);
}

TEST_CASE("cli solve reports the machine-optimal fig2ul solution") {
  CliRun run = run_cli({"solve", "--algorithm", "mopt", "-i",
                        fixture_path("fig2ul.json")});
  REQUIRE(run.exit_code == 0);
  ordered_json result = run.json();
  CHECK(result["assignment"]["j1"].is_null());
  CHECK(result["assignment"]["j2"] == "m2");
  CHECK(result["assignment"]["j3"] == "m1");
  CHECK(result["size"] == 3);
  CHECK(result["congestion"] == 0);
  CHECK(result["counters"]["proposal_count"].get<long long>() <= 5);
}

TEST_CASE("cli solve jopt, fractional, and round on fig1") {
  CliRun run =
      run_cli({"solve", "--algorithm", "jopt", "-i", fixture_path("fig1.json")});
  REQUIRE(run.exit_code == 0);
  CHECK(run.json()["assignment"]["j2"] == "m1");

  run = run_cli(
      {"solve", "--algorithm", "fractional", "-i", fixture_path("fig1.json")});
  REQUIRE(run.exit_code == 0);
  ordered_json fractional = run.json();
  CHECK(fractional["amounts"]["j2:m1"] == 1);
  CHECK(fractional["amounts"]["j2:m2"] == 1);
  CHECK(fractional["amounts"].size() == 2);  // dummy edges stay internal
  CHECK(fractional["size"] == 2);

  run = run_cli(
      {"solve", "--algorithm", "round", "-i", fixture_path("fig1.json")});
  REQUIRE(run.exit_code == 0);
  ordered_json rounded = run.json();
  CHECK(rounded["assignment"]["j2"] == "m1");
  CHECK(rounded["assignment"]["j1"].is_null());
  CHECK(rounded["counters"]["augmentation_count"] == 1);
}

TEST_CASE("cli round accepts a seed allocation file") {
  std::string seed = temp_file("stalloc_seed.json",
                               R"({"amounts": {"j2:m1": 1, "j2:m2": 1}})");
  CliRun run = run_cli({"solve", "--algorithm", "round", "--seed-allocation",
                        seed, "-i", fixture_path("fig1.json")});
  REQUIRE(run.exit_code == 0);
  CHECK(run.json()["assignment"]["j2"] == "m1");
}

TEST_CASE("cli solve --trace includes the proposal log") {
  CliRun run = run_cli({"--trace", "solve", "--algorithm", "mopt", "-i",
                        fixture_path("fig1.json")});
  REQUIRE(run.exit_code == 0);
  ordered_json trace = run.json()["trace"];
  REQUIRE(trace.size() == 2);
  CHECK(trace[0]["proposer"] == "m1");
  CHECK(trace[0]["target"] == "j2");
  CHECK(trace[0]["accepted"] == true);
  CHECK(trace[1]["accepted"] == false);
}

TEST_CASE("cli reports json syntax errors with position info") {
  std::string bad = temp_file("stalloc_syntax.json", "{ \"jobs\": [,] }");
  CliRun run = run_cli({"decide", "-i", bad});
  CHECK(run.exit_code == 2);
  CHECK(run.err.find("SyntaxError") != std::string::npos);
  CHECK(run.err.find("line 1") != std::string::npos);
}

TEST_CASE("cli decide reports existence and minimum congestion") {
  CliRun run = run_cli({"decide", "-i", fixture_path("fig1.json")});
  REQUIRE(run.exit_code == 0);
  ordered_json result = run.json();
  CHECK(result["exists"] == false);
  CHECK(result["min_congestion"] == 1);

  run = run_cli({"--strict", "decide", "-i", fixture_path("fig1.json")});
  CHECK(run.exit_code == 1);

  run = run_cli({"decide", "-i", fixture_path("fig2ul.json")});
  REQUIRE(run.exit_code == 0);
  result = run.json();
  CHECK(result["exists"] == true);
  CHECK(result["assignment"]["j3"] == "m1");
}

TEST_CASE("cli check validates assignments in both modes") {
  std::string good = temp_file("stalloc_good.json",
                               R"({"assignment": {"j2": "m1", "j1": null}})");
  CliRun run = run_cli({"check", "--assignment", good, "--mode", "relaxed",
                        "-i", fixture_path("fig1.json")});
  REQUIRE(run.exit_code == 0);
  CHECK(run.json()["stable"] == true);

  std::string blocked =
      temp_file("stalloc_blocked.json", R"({"j1": "m1", "j2": "m2"})");
  run = run_cli({"--strict", "check", "--assignment", blocked, "--mode",
                 "relaxed", "-i", fixture_path("fig1.json")});
  CHECK(run.exit_code == 1);
  ordered_json result = ordered_json::parse(run.out);
  CHECK(result["stable"] == false);
  CHECK(result["blocking_edges"] == ordered_json::array({"j2:m1"}));

  std::string fractional = temp_file("stalloc_frac.json",
                                     R"({"amounts": {"j2:m1": 3}})");
  run = run_cli({"check", "--assignment", fractional, "--mode", "fractional",
                 "-i", fixture_path("fig1.json")});
  REQUIRE(run.exit_code == 0);
  result = ordered_json::parse(run.out);
  CHECK(result["feasible"] == false);
  CHECK(result["violations"].size() == 3);
}

TEST_CASE("cli enumerate lists both fig2ul solutions") {
  CliRun run = run_cli({"enumerate", "-i", fixture_path("fig2ul.json")});
  REQUIRE(run.exit_code == 0);
  ordered_json result = run.json();
  CHECK(result["count"] == 2);
  CHECK(result["solutions"][0]["size"] == 5);
  CHECK(result["solutions"][1]["size"] == 3);
}

TEST_CASE("cli verify passes on fig2ul and on a random batch") {
  CliRun run = run_cli({"verify", "-i", fixture_path("fig2ul.json")});
  REQUIRE(run.exit_code == 0);
  ordered_json result = run.json();
  CHECK(result["all_pass"] == true);
  for (const auto& check : result["checks"]) {
    CHECK(check["pass"] == true);
  }

  run = run_cli({"verify", "--random", "10", "--seed", "5", "--jobs", "5",
                 "--machines", "3"});
  REQUIRE(run.exit_code == 0);
  result = run.json();
  CHECK(result["instances"] == 10);
  CHECK(result["failures"] == 0);
}

TEST_CASE("cli gen emits a valid instance deterministically") {
  std::vector<std::string> args = {"gen",         "--jobs",    "6",
                                   "--machines",  "4",         "--max-size",
                                   "3",           "--max-capacity", "3",
                                   "--density",   "0.8",       "--seed", "1"};
  CliRun a = run_cli(args);
  CliRun b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  Instance inst = parse_instance(a.out);
  CHECK(inst.num_jobs() == 6);
}

TEST_CASE("cli surfaces input errors with kind tags and exit code 2") {
  std::string bad = temp_file("stalloc_bad.json",
                              R"({"jobs": [{"id": "j1", "size": 0, "prefs": []}],
                                  "machines": []})");
  CliRun run = run_cli({"solve", "--algorithm", "mopt", "-i", bad});
  CHECK(run.exit_code == 2);
  CHECK(run.err.find("NonPositiveSize") != std::string::npos);

  run = run_cli({"solve", "--algorithm", "mopt", "-i", "/nonexistent.json"});
  CHECK(run.exit_code == 2);

  run = run_cli({"nonsense"});
  CHECK(run.exit_code == 2);
}

TEST_CASE("cli writes to --output when given") {
  std::filesystem::path out_path =
      std::filesystem::temp_directory_path() / "stalloc_out.json";
  std::filesystem::remove(out_path);
  CliRun run = run_cli({"decide", "-i", fixture_path("fig2ul.json"), "-o",
                        out_path.string()});
  REQUIRE(run.exit_code == 0);
  CHECK(run.out.empty());
  ordered_json result = ordered_json::parse(read_file(out_path.string()));
  CHECK(result["exists"] == true);
}

TEST_SUITE_END();
