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

#include <random>

#include "stalloc/checks.hpp"
#include "stalloc/fractional.hpp"
#include "stalloc/generate.hpp"
#include "test_instances.hpp"

using namespace stalloc;
using namespace stalloc::testing;

namespace {

void check_fractional_stable_output(const Instance& dummied, const Allocation& x) {
  CHECK(check_fractional_feasibility(dummied, x).feasible());
  CHECK(fractional_blocking_edges(dummied, x).empty());
  std::vector<long long> loads = job_loads(dummied, x);
  for (int j = 0; j < dummied.num_jobs(); ++j) {
    CHECK(loads[j] == dummied.job(j).size);
  }
}

}  // namespace

TEST_SUITE_BEGIN("fractional");

TEST_CASE("with_dummy appends a last-choice machine sized to the total load") {
  Instance t = with_dummy(tiny());
  REQUIRE(t.dummy().has_value());
  CHECK(t.num_machines() == 2);
  CHECK(t.machine(*t.dummy()).capacity == 1);
  CHECK(t.job(0).pref_edges.size() == 2);
  CHECK(t.edge(t.job(0).pref_edges.back()).machine == *t.dummy());

  Instance f1 = with_dummy(fig1());
  CHECK(f1.machine(*f1.dummy()).capacity == 3);
  CHECK(f1.machine(*f1.dummy()).pref_edges.size() == 2);

  CHECK_THROWS_AS(with_dummy(f1), Error);

  Instance empty = validate_instance(RawInstance{});
  Instance dummied = with_dummy(empty);
  CHECK(dummied.machine(*dummied.dummy()).capacity == 0);
}

TEST_CASE("fractional solver reproduces the unique fig1 allocation") {
  Instance dummied = with_dummy(fig1());
  FractionalResult result = solve_fractional_stable(dummied);
  CHECK(result.allocation ==
        amounts(dummied, {{"j2:m1", 1}, {"j2:m2", 1}, {"j1:_dummy", 1}}));
  check_fractional_stable_output(dummied, result.allocation);
}

TEST_CASE("fractional solver on tiny and fig2ul") {
  Instance t = with_dummy(tiny());
  CHECK(solve_fractional_stable(t).allocation == amounts(t, {{"j1:m1", 1}}));

  Instance ul = with_dummy(fig2ul());
  FractionalResult result = solve_fractional_stable(ul);
  CHECK(result.allocation == amounts(ul, {{"j2:m1", 1},
                                          {"j3:m2", 1},
                                          {"j3:m1", 1},
                                          {"j1:_dummy", 2}}));
  check_fractional_stable_output(ul, result.allocation);
}

TEST_CASE("fractional solver requires the dummy") {
  CHECK_THROWS_AS(solve_fractional_stable(fig1()), Error);
}

TEST_CASE("fractional solver honors explicit edge capacities") {
  RawInstance raw = raw_fig1();
  raw.edge_capacities["j2:m1"] = 1;
  Instance dummied = with_dummy(validate_instance(raw));
  FractionalResult result = solve_fractional_stable(dummied);
  check_fractional_stable_output(dummied, result.allocation);
  int e = dummied.find_edge(dummied.job_index("j2"), dummied.machine_index("m1"));
  CHECK(result.allocation.amount(e) <= 1);
}

TEST_CASE("fractional solver output is stable and full on random instances") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    GenerateParams params;
    params.num_jobs = 1 + static_cast<int>(rng() % 6);
    params.num_machines = 1 + static_cast<int>(rng() % 4);
    params.max_size = 3;
    params.max_capacity = 3;
    params.density = (rng() % 2) ? 1.0 : 0.6;
    params.seed = rng();
    Instance dummied = with_dummy(generate_instance(params));
    FractionalResult result = solve_fractional_stable(dummied);
    check_fractional_stable_output(dummied, result.allocation);
  }
}

TEST_CASE("complete_with_dummy routes deficits to the dummy edge") {
  Instance dummied = with_dummy(fig1());
  Allocation partial = amounts(dummied, {{"j2:m1", 1}, {"j2:m2", 1}});
  Allocation completed = complete_with_dummy(dummied, partial);
  CHECK(completed ==
        amounts(dummied, {{"j2:m1", 1}, {"j2:m2", 1}, {"j1:_dummy", 1}}));
}

TEST_SUITE_END();
