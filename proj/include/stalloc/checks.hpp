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

#pragma once

#include <string>
#include <vector>

#include "stalloc/allocation.hpp"
#include "stalloc/instance.hpp"

namespace stalloc {

enum class Saturation { under, saturated, over_capacitated };

struct MachineStatus {
  Saturation saturation = Saturation::under;
  bool popular = false;
};

enum class StabilityMode { fractional, relaxed_unsplit };

enum class LexOrder { prefers_x1, prefers_x2, equal };

struct Violation {
  std::string kind;    // "edge_capacity", "job_size", "machine_capacity", "relaxed_capacity"
  std::string entity;  // edge key, job id, or machine id
  std::string detail;
};

struct StabilityReport {
  StabilityMode mode = StabilityMode::fractional;
  std::vector<Violation> feasibility_violations;
  std::vector<int> blocking_edges;

  bool feasible() const { return feasibility_violations.empty(); }
  bool stable() const { return feasible() && blocking_edges.empty(); }
};

/// Total assigned amount; edges to the dummy machine do not count.
long long total_size(const Instance& instance, const Allocation& allocation);
long long total_size(const Instance& instance, const UnsplitAssignment& assignment);

/// Sum over real machines of max(0, load - capacity).
long long total_congestion(const Instance& instance, const Allocation& allocation);
long long total_congestion(const Instance& instance,
                           const UnsplitAssignment& assignment);

/// Reports every violation of 0 <= x(jm) <= c(jm), x(j) <= q(j) and
/// x(m) <= q(m). The dummy machine is exempt from its capacity check.
StabilityReport check_fractional_feasibility(const Instance& instance,
                                             const Allocation& allocation);

/// Relaxed feasibility: for each real machine with assignees, removing the
/// assignee it ranks worst must leave the load strictly below capacity.
/// Errors: assigned_to_unlisted_machine.
StabilityReport check_relaxed_unsplit_feasibility(const Instance& instance,
                                                  const UnsplitAssignment& assignment);

/// Edges jm with x(jm) < c(jm) where j is not fully allocated to machines it
/// ranks at least as high as m and m is not fully allocated to jobs it ranks
/// at least as high as j. Sorted by (job declaration order, rank); edges to
/// the dummy machine never block. Errors: infeasible_input.
std::vector<int> fractional_blocking_edges(const Instance& instance,
                                           const Allocation& allocation);

/// Empty edges jm where j prefers m to its assigned machine (unassigned
/// loses to every listed machine) and the total size of jobs assigned to m
/// that m strictly prefers to j is below q(m). Sorted by (job declaration
/// order, rank). Errors: infeasible_input, assigned_to_unlisted_machine.
std::vector<int> relaxed_blocking_edges(const Instance& instance,
                                        const UnsplitAssignment& assignment);

/// Restricts the symmetric difference of x1 and x2 to edges at the given
/// machine; equal iff empty, otherwise the side owning the machine's
/// best-ranked edge in the difference wins. Errors: unknown_machine.
LexOrder lex_compare_machine(const Instance& instance, const UnsplitAssignment& x1,
                             const UnsplitAssignment& x2, int machine);

/// Saturation from load vs capacity; a machine is popular iff some job
/// prefers it to a machine holding part of that job's allocation, or the job
/// has unallocated size and lists it. The dummy machine is never popular.
std::vector<MachineStatus> classify_machines(const Instance& instance,
                                             const Allocation& allocation);

}  // namespace stalloc
