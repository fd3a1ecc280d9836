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

#include <optional>
#include <vector>

#include "stalloc/allocation.hpp"
#include "stalloc/instance.hpp"

namespace stalloc {

// Rounds a fractional stable allocation with every job fully allocated into
// a relaxed unsplit stable assignment by shifting mass around rotations.
//
// Vocabulary, for an allocation with x(j) = q(j) everywhere: a job not
// sitting entirely on its first-choice edge has a refusal edge (its worst
// positive edge) and proposal edges (everything it ranks above the refusal
// edge). A machine is popular when it has an incoming proposal edge, and
// dangerous when it is over capacity with zero allocation on all incoming
// proposal edges.

struct PointerState {
  std::vector<int> refusal_edge;           // per job; -1 when undefined
  std::vector<char> machine_popular;       // per machine
  std::vector<char> machine_dangerous;     // per machine
  std::vector<int> best_proposal_edge;     // per machine; -1 when none
  std::vector<int> positive_proposal_edge; // per machine; -1 when none
};

struct RotationStep {
  int proposal_edge = -1;  // gains mass
  int refusal_edge = -1;   // loses mass; its machine is the next hop
};

/// Alternating proposal/refusal sequence: either a closed cycle or a path
/// whose last refusal edge lands on an unpopular or dangerous machine.
struct Rotation {
  enum class Kind { cycle, path_unpopular, path_dangerous };

  std::vector<RotationStep> steps;
  Kind kind = Kind::cycle;
  long long slack = 0;  // load minus capacity at a dangerous endpoint
};

/// Derives refusal edges and per-machine flags for the current allocation.
/// In a stable allocation, at most one proposal edge into a machine carries
/// positive amount; a second one means the input is unstable.
/// Errors: not_fully_allocated, unstable_input.
PointerState compute_pointers(const Instance& instance_with_dummy,
                              const Allocation& allocation);

/// Builds the next rotation, or nothing when no machine has a positive
/// incoming proposal edge (at that point the allocation is unsplit). Starts
/// from the lowest-indexed machine with a positive incoming proposal edge,
/// follows best incoming proposal edges and refusal edges, and stops on a
/// machine revisit (keeping just the cycle), an unpopular machine, or a
/// dangerous machine. Errors: inconsistent_pointers.
std::optional<Rotation> find_rotation(const Instance& instance,
                                      const Allocation& allocation,
                                      const PointerState& pointers);

/// Shifts the largest feasible amount around the rotation: the minimum
/// refusal-edge amount, additionally capped by the slack at a dangerous
/// endpoint so that machine drops exactly to saturation.
/// Errors: zero_epsilon.
Allocation apply_rotation(const Instance& instance, const Allocation& allocation,
                          const Rotation& rotation);

struct RoundResult {
  UnsplitAssignment assignment;
  long long augmentation_count = 0;
};

/// Rounds the given seed (a fractional stable allocation on the dummied
/// instance with x(j) = q(j) for every job) to a relaxed unsplit stable
/// assignment. Jobs left on the dummy machine come back unassigned.
/// Errors: invalid_instance, not_fully_allocated, unstable_input,
/// infeasible_input.
RoundResult round_to_unsplit(const Instance& instance_with_dummy,
                             const Allocation& seed);

/// Convenience form: appends the dummy machine, solves the fractional
/// problem for a seed, and rounds it.
RoundResult round_to_unsplit(const Instance& instance);

}  // namespace stalloc
