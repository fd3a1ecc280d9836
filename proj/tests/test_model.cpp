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

#include <functional>
#include <random>

#include "stalloc/checks.hpp"
#include "stalloc/generate.hpp"
#include "stalloc/instance.hpp"
#include "test_instances.hpp"

using namespace stalloc;
using namespace stalloc::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::syntax_error;
}

}  // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("validate_instance accepts the tiny instance") {
  Instance inst = tiny();
  CHECK(inst.num_jobs() == 1);
  CHECK(inst.num_machines() == 1);
  CHECK(inst.num_edges() == 1);
  CHECK(inst.edge(0).capacity == 1);  // defaults to the job size
}

TEST_CASE("validate_instance builds all three edges of fig1") {
  Instance inst = fig1();
  CHECK(inst.num_edges() == 3);
  int e = inst.find_edge(inst.job_index("j2"), inst.machine_index("m1"));
  REQUIRE(e >= 0);
  CHECK(inst.edge(e).job_rank == 0);
  CHECK(inst.edge(e).machine_rank == 0);
  CHECK(inst.edge(e).capacity == 2);
}

TEST_CASE("validate_instance rejects broken mutuality") {
  RawInstance raw = raw_tiny();
  raw.machines[0].prefs.clear();
  CHECK(kind_of([&] { validate_instance(raw); }) ==
        ErrorKind::asymmetric_preference);

  raw = raw_tiny();
  raw.machines[0].prefs = {"j1", "j9"};
  CHECK(kind_of([&] { validate_instance(raw); }) ==
        ErrorKind::asymmetric_preference);
}

TEST_CASE("validate_instance rejects duplicates, bad sizes, bad capacities") {
  RawInstance raw = raw_fig1();
  raw.jobs.push_back(raw.jobs[0]);
  CHECK(kind_of([&] { validate_instance(raw); }) ==
        ErrorKind::duplicate_identifier);

  raw = raw_fig1();
  raw.jobs[0].size = 0;
  CHECK(kind_of([&] { validate_instance(raw); }) == ErrorKind::non_positive_size);

  raw = raw_fig1();
  raw.machines[0].capacity = -1;
  CHECK(kind_of([&] { validate_instance(raw); }) == ErrorKind::non_positive_size);

  raw = raw_fig1();
  raw.jobs[1].prefs = {"m1", "m1"};
  CHECK(kind_of([&] { validate_instance(raw); }) ==
        ErrorKind::duplicate_identifier);

  raw = raw_fig1();
  raw.edge_capacities["j1:m2"] = 1;
  CHECK(kind_of([&] { validate_instance(raw); }) ==
        ErrorKind::edge_capacity_on_missing_edge);

  raw = raw_fig1();
  raw.edge_capacities["j2:m1"] = 0;
  CHECK(kind_of([&] { validate_instance(raw); }) == ErrorKind::non_positive_size);
}

TEST_CASE("machine capacity zero is legal") {
  RawInstance raw = raw_tiny();
  raw.machines[0].capacity = 0;
  Instance inst = validate_instance(raw);
  CHECK(inst.machine(0).capacity == 0);
  // An empty zero-capacity machine never blocks anything.
  CHECK(relaxed_blocking_edges(inst, UnsplitAssignment::empty(inst)).empty());
}

TEST_CASE("total_size counts real machines only") {
  Instance inst = fig2ul();
  CHECK(total_size(inst, UnsplitAssignment::empty(inst)) == 0);
  UnsplitAssignment xs =
      assign(inst, {{"j1", "m1"}, {"j2", "m1"}, {"j3", "m2"}});
  CHECK(total_size(inst, xs) == 5);
  UnsplitAssignment xd = assign(inst, {{"j3", "m1"}, {"j2", "m2"}});
  CHECK(total_size(inst, xd) == 3);
}

TEST_CASE("total_congestion sums overfill across machines") {
  Instance inst = fig2ul();
  UnsplitAssignment xd = assign(inst, {{"j3", "m1"}, {"j2", "m2"}});
  CHECK(total_congestion(inst, xd) == 0);
  UnsplitAssignment xs =
      assign(inst, {{"j1", "m1"}, {"j2", "m1"}, {"j3", "m2"}});
  // m1 holds 3 against capacity 2 and m2 holds 2 against capacity 1.
  CHECK(total_congestion(inst, xs) == 2);

  Instance f1 = fig1();
  CHECK(total_congestion(f1, assign(f1, {{"j2", "m1"}})) == 1);
}

TEST_CASE("check_fractional_feasibility reports each violated constraint") {
  Instance inst = fig1();
  CHECK(check_fractional_feasibility(inst, Allocation(inst)).feasible());
  CHECK(check_fractional_feasibility(
            inst, amounts(inst, {{"j2:m1", 1}, {"j2:m2", 1}}))
            .feasible());

  StabilityReport report =
      check_fractional_feasibility(inst, amounts(inst, {{"j2:m1", 3}}));
  REQUIRE(report.feasibility_violations.size() == 3);
  CHECK(report.feasibility_violations[0].kind == "edge_capacity");
  CHECK(report.feasibility_violations[1].kind == "job_size");
  CHECK(report.feasibility_violations[2].kind == "machine_capacity");
}

TEST_CASE("check_relaxed_unsplit_feasibility drops the worst assignee") {
  Instance ul = fig2ul();
  UnsplitAssignment xs = assign(ul, {{"j1", "m1"}, {"j2", "m1"}, {"j3", "m2"}});
  CHECK(check_relaxed_unsplit_feasibility(ul, xs).feasible());

  Instance f1 = fig1();
  UnsplitAssignment both = assign(f1, {{"j1", "m1"}, {"j2", "m1"}});
  StabilityReport report = check_relaxed_unsplit_feasibility(f1, both);
  REQUIRE(report.feasibility_violations.size() == 1);
  CHECK(report.feasibility_violations[0].kind == "relaxed_capacity");
  CHECK(report.feasibility_violations[0].entity == "m1");

  CHECK(check_relaxed_unsplit_feasibility(f1, UnsplitAssignment::empty(f1))
            .feasible());
}

TEST_CASE("check_relaxed_unsplit_feasibility rejects unlisted machines") {
  Instance inst = fig1();
  UnsplitAssignment bad = assign(inst, {{"j1", "m2"}});
  CHECK(kind_of([&] { check_relaxed_unsplit_feasibility(inst, bad); }) ==
        ErrorKind::assigned_to_unlisted_machine);
}

TEST_CASE("fractional blocking edges on fig1") {
  Instance inst = fig1();
  CHECK(fractional_blocking_edges(inst, amounts(inst, {{"j2:m1", 1}, {"j2:m2", 1}}))
            .empty());
  // A feasible but unstable placement leaves m1 contested by both jobs.
  std::vector<int> blocking =
      fractional_blocking_edges(inst, amounts(inst, {{"j2:m2", 2}}));
  REQUIRE(blocking.size() == 2);
  CHECK(inst.edge_key(blocking[0]) == "j1:m1");
  CHECK(inst.edge_key(blocking[1]) == "j2:m1");

  CHECK(kind_of([&] {
          fractional_blocking_edges(inst, amounts(inst, {{"j2:m1", 3}}));
        }) == ErrorKind::infeasible_input);
}

TEST_CASE("relaxed blocking edges on fig1 and fig2ul") {
  Instance f1 = fig1();
  std::vector<int> blocking =
      relaxed_blocking_edges(f1, assign(f1, {{"j1", "m1"}, {"j2", "m2"}}));
  REQUIRE(blocking.size() == 1);
  CHECK(f1.edge_key(blocking[0]) == "j2:m1");

  Instance ul = fig2ul();
  CHECK(relaxed_blocking_edges(ul, assign(ul, {{"j3", "m1"}, {"j2", "m2"}}))
            .empty());
}

TEST_CASE("relaxed blocking output is sorted by job then rank") {
  Instance ul = fig2ul();
  std::vector<int> blocking =
      relaxed_blocking_edges(ul, UnsplitAssignment::empty(ul));
  REQUIRE(blocking.size() >= 2);
  for (size_t i = 1; i < blocking.size(); ++i) {
    const Edge& a = ul.edge(blocking[i - 1]);
    const Edge& b = ul.edge(blocking[i]);
    CHECK((a.job < b.job || (a.job == b.job && a.job_rank < b.job_rank)));
  }
}

TEST_CASE("lex_compare_machine on fig2ul") {
  Instance inst = fig2ul();
  UnsplitAssignment xd = assign(inst, {{"j3", "m1"}, {"j2", "m2"}});
  UnsplitAssignment xs =
      assign(inst, {{"j1", "m1"}, {"j2", "m1"}, {"j3", "m2"}});
  int m1 = inst.machine_index("m1");
  int m2 = inst.machine_index("m2");
  CHECK(lex_compare_machine(inst, xd, xd, m1) == LexOrder::equal);
  CHECK(lex_compare_machine(inst, xd, xs, m1) == LexOrder::prefers_x1);
  CHECK(lex_compare_machine(inst, xd, xs, m2) == LexOrder::prefers_x1);
  CHECK(lex_compare_machine(inst, xs, xd, m1) == LexOrder::prefers_x2);
  CHECK(kind_of([&] { lex_compare_machine(inst, xd, xs, 99); }) ==
        ErrorKind::unknown_machine);
}

TEST_CASE("classify_machines saturation and popularity") {
  Instance f1 = fig1();
  std::vector<MachineStatus> status =
      classify_machines(f1, amounts(f1, {{"j2:m1", 1}, {"j2:m2", 1}}));
  CHECK(status[0].saturation == Saturation::saturated);
  CHECK(status[0].popular);  // j2 holds m2 and prefers m1; j1 is unallocated
  CHECK(status[1].saturation == Saturation::under);
  CHECK_FALSE(status[1].popular);

  status = classify_machines(f1, Allocation(f1));
  CHECK(status[0].popular);
  CHECK(status[1].popular);

  Instance t = tiny();
  status = classify_machines(t, amounts(t, {{"j1:m1", 1}}));
  CHECK(status[0].saturation == Saturation::saturated);
  CHECK_FALSE(status[0].popular);
}

TEST_CASE("unsplit assignment round-trips through allocation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    GenerateParams params;
    params.num_jobs = 1 + static_cast<int>(rng() % 5);
    params.num_machines = 1 + static_cast<int>(rng() % 4);
    params.max_size = 3;
    params.max_capacity = 3;
    params.density = 0.7;
    params.seed = rng();
    Instance inst = generate_instance(params);

    UnsplitAssignment x = UnsplitAssignment::empty(inst);
    long long unassigned_size = 0;
    for (int j = 0; j < inst.num_jobs(); ++j) {
      const auto& prefs = inst.job(j).pref_edges;
      size_t pick = rng() % (prefs.size() + 1);
      if (pick == prefs.size()) {
        unassigned_size += inst.job(j).size;
      } else {
        x.machine_of[j] = inst.edge(prefs[pick]).machine;
      }
    }
    CHECK(UnsplitAssignment::from_allocation(inst, x.to_allocation(inst)) == x);
    CHECK(total_size(inst, x) + unassigned_size == inst.total_job_size());
  }
}

TEST_CASE("saturating every machine with its top jobs leaves nothing blocking") {
  // When every machine is filled to capacity (or beyond) by a prefix of its
  // own list, no empty edge can block.
  Instance inst = fig2mid();
  UnsplitAssignment x = UnsplitAssignment::empty(inst);
  std::vector<long long> load(inst.num_machines(), 0);
  for (int m = 0; m < inst.num_machines(); ++m) {
    for (int e : inst.machine(m).pref_edges) {
      if (load[m] >= inst.machine(m).capacity) break;
      int j = inst.edge(e).job;
      if (x.machine_of[j] != UnsplitAssignment::kUnassigned) continue;
      x.machine_of[j] = m;
      load[m] += inst.job(j).size;
    }
  }
  for (int m = 0; m < inst.num_machines(); ++m) {
    if (load[m] < inst.machine(m).capacity) return;  // construction missed; vacuous
  }
  CHECK(relaxed_blocking_edges(inst, x).empty());
}

TEST_SUITE_END();
