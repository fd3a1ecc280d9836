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

#include "stalloc/allocation.hpp"
#include "stalloc/instance.hpp"

namespace stalloc {

/// Appends the dummy machine: capacity equal to the total job size, last on
/// every job's list, listing every job in declaration order, with edge
/// capacities equal to each job's size. Errors: dummy_already_present,
/// duplicate_identifier if the reserved id is taken.
Instance with_dummy(const Instance& instance);

struct FractionalResult {
  Allocation allocation;
  long long offer_count = 0;
};

/// Quantity-based deferred acceptance. Each job offers its unallocated
/// amount (capped by the edge capacity) to its best machine that has not
/// fully rejected it; a machine keeps amounts on its best edges up to its
/// capacity, reclaiming from its worst positive edge when a better offer
/// arrives. Reclaimed amounts re-enter the owning job's pending pool.
///
/// The dummy machine guarantees every job ends fully allocated, so the
/// output is fractional-feasible, has no fractional blocking edge, and
/// satisfies x(j) = q(j) for every job. Errors: invalid_instance when no
/// dummy machine is present.
FractionalResult solve_fractional_stable(const Instance& instance_with_dummy);

/// Routes each job's unallocated remainder onto its dummy edge, so seeds
/// given on real edges fully allocate every job. Amounts already exceeding a
/// job's size are left alone for the feasibility check to report.
Allocation complete_with_dummy(const Instance& instance_with_dummy,
                               const Allocation& allocation);

}  // namespace stalloc
