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

#include <map>
#include <string>
#include <vector>

#include "stalloc/instance.hpp"

namespace stalloc {

/// Per-edge assignment amounts. A zero amount is equivalent to an absent
/// entry; amounts are integers throughout (integral inputs stay integral
/// under every algorithm here).
class Allocation {
 public:
  explicit Allocation(const Instance& instance)
      : amounts_(instance.num_edges(), 0) {}

  long long amount(int edge) const { return amounts_[edge]; }
  void set(int edge, long long value) { amounts_[edge] = value; }
  void add(int edge, long long delta) { amounts_[edge] += delta; }
  int num_edges() const { return static_cast<int>(amounts_.size()); }

  bool operator==(const Allocation&) const = default;

  /// Builds from a "<job>:<machine>" -> amount map.
  /// Errors: unknown_edge for keys naming absent edges, syntax_error for
  /// negative amounts.
  static Allocation from_amounts(const Instance& instance,
                                 const std::map<std::string, long long>& amounts);

  /// Nonzero amounts keyed "<job>:<machine>". Edges to the dummy machine are
  /// omitted unless include_dummy is set.
  std::map<std::string, long long> to_amounts(const Instance& instance,
                                              bool include_dummy = false) const;

 private:
  std::vector<long long> amounts_;
};

std::vector<long long> job_loads(const Instance& instance,
                                 const Allocation& allocation);
std::vector<long long> machine_loads(const Instance& instance,
                                     const Allocation& allocation);

/// Throws unknown_edge when the allocation was built against a different
/// edge set than the instance's.
void require_same_shape(const Instance& instance, const Allocation& allocation);

/// Whole-job assignment: each job sits on one machine or is unassigned.
/// Assignment to the dummy machine and "unassigned" are the same state; this
/// type always uses kUnassigned for it.
struct UnsplitAssignment {
  static constexpr int kUnassigned = -1;

  std::vector<int> machine_of;  // per job: machine index or kUnassigned

  static UnsplitAssignment empty(const Instance& instance) {
    return UnsplitAssignment{
        std::vector<int>(static_cast<size_t>(instance.num_jobs()), kUnassigned)};
  }

  bool assigned(int job) const { return machine_of[job] != kUnassigned; }

  bool operator==(const UnsplitAssignment&) const = default;

  /// Expands to per-edge amounts: x(jm) = size(j) on the assigned edge.
  /// When the instance has a dummy machine, unassigned jobs appear on it.
  /// Errors: assigned_to_unlisted_machine.
  Allocation to_allocation(const Instance& instance) const;

  /// Inverse of to_allocation. Errors: invalid_instance when some job's
  /// allocation is split or not exactly its size.
  static UnsplitAssignment from_allocation(const Instance& instance,
                                           const Allocation& allocation);
};

}  // namespace stalloc
