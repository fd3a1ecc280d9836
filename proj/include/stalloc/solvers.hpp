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

#include <vector>

#include "stalloc/allocation.hpp"
#include "stalloc/instance.hpp"

namespace stalloc {

struct ProposalEvent {
  int proposer = -1;  // machine in the machine-proposing solver, job otherwise
  int target = -1;
  bool accepted = false;
};

/// Proposal log. Each edge carries at most one proposal in either solver, so
/// proposal_count never exceeds the number of edges.
struct SolverTrace {
  std::vector<ProposalEvent> proposals;
  long long proposal_count = 0;
  long long rejection_count = 0;
};

struct SolveResult {
  UnsplitAssignment assignment;
  SolverTrace trace;
};

/// Machine-proposing deferred acceptance. Every job starts unassigned; while
/// some machine is below capacity and has jobs left to try, it offers the
/// best untried job its full size, and the job accepts iff the machine beats
/// its current one (unassigned loses to everything). Acceptance moves the
/// job entirely and reactivates the abandoned machine.
///
/// The result is the machine-optimal (and job-pessimal) relaxed unsplit
/// stable assignment; it has minimum total assigned size and minimum total
/// congestion among all relaxed unsplit stable assignments.
///
/// Errors: invalid_instance (dummy machine present, or an edge capacity
/// below its job's size).
SolveResult solve_machine_optimal(const Instance& instance);

/// Job-proposing deferred acceptance. Each pending job proposes down its
/// list with its full size; a machine accepts iff the total size of held
/// jobs it prefers to the proposer is below its capacity, then evicts its
/// worst held job while the rest still fill or exceed the capacity.
///
/// The result is the job-optimal (and machine-pessimal) relaxed unsplit
/// stable assignment; it has maximum total assigned size.
///
/// Errors: invalid_instance.
SolveResult solve_job_optimal(const Instance& instance);

struct ExistenceResult {
  bool exists = false;
  UnsplitAssignment machine_optimal;
  long long min_congestion = 0;  // congestion of the machine-optimal solution
};

/// Decides whether an unsplit stable assignment with all capacities
/// respected exists. The machine-optimal solution is one whenever any
/// exists, so the answer is yes iff it has zero congestion and no blocking
/// edge; otherwise its congestion is the minimum achievable.
ExistenceResult decide_unsplit_existence(const Instance& instance);

}  // namespace stalloc
