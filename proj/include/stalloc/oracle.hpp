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

inline constexpr long long kDefaultEnumerationLimit = 10'000'000;

/// Exhaustively enumerates every relaxed unsplit stable assignment, in
/// canonical order: jobs in declaration order, choices ordered by machine
/// index with unassigned last. Every job may stay unassigned even with a
/// nonempty list. The product over jobs of (list length + 1) must not exceed
/// the limit. Errors: search_space_too_large.
std::vector<UnsplitAssignment> enumerate_relaxed_stable(
    const Instance& instance, long long limit = kDefaultEnumerationLimit);

/// Exhaustively enumerates the integral allocations that are
/// fractional-feasible, fully allocate every job, and have no fractional
/// blocking edge, in canonical order (lexicographic by per-edge amounts).
/// The limit bounds the number of explored search nodes; the capacity-pruned
/// search visits far fewer nodes than the raw amount grid.
/// Errors: search_space_too_large.
std::vector<Allocation> enumerate_fractional_stable(
    const Instance& instance_with_dummy,
    long long limit = kDefaultEnumerationLimit);

struct TheoremCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample payload on failure
};

struct TheoremReport {
  std::vector<TheoremCheck> checks;
  std::vector<std::string> notes;

  bool all_pass() const {
    for (const TheoremCheck& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

/// Runs both unsplit solvers, the fractional solver, and the rounder against
/// the enumerated ground truth and checks the structural claims: size
/// extremes, congestion minimality, optimal/pessimal duality on both sides,
/// the rural-hospital variant, decision correctness, rounder membership,
/// trace bounds and monotonicity, and the fractional-level invariants.
/// Records (as a note) any machine that is empty in one stable solution and
/// assigned in another. Errors: search_space_too_large.
TheoremReport verify_structure(const Instance& instance,
                               long long limit = kDefaultEnumerationLimit);

struct RandomVerifySummary {
  int instances = 0;
  int failures = 0;
  std::vector<unsigned long long> failed_seeds;
  std::string first_failure_detail;
};

/// Deterministic campaign of verify_structure runs over generated random
/// instances. Instance i is generated from a sub-seed derived from
/// master_seed and i.
RandomVerifySummary verify_random_instances(int count,
                                            unsigned long long master_seed,
                                            int max_jobs, int max_machines,
                                            long long max_size,
                                            long long max_capacity);

}  // namespace stalloc
