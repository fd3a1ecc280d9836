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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stalloc/error.hpp"

namespace stalloc {

struct RawJob {
  std::string id;
  long long size = 0;
  std::vector<std::string> prefs;  // machine ids, best first

  bool operator==(const RawJob&) const = default;
};

struct RawMachine {
  std::string id;
  long long capacity = 0;
  std::vector<std::string> prefs;  // job ids, best first

  bool operator==(const RawMachine&) const = default;
};

/// Unvalidated instance data, as read from JSON or produced by a generator.
struct RawInstance {
  std::vector<RawJob> jobs;
  std::vector<RawMachine> machines;
  std::map<std::string, long long> edge_capacities;  // "<job>:<machine>" -> cap
  std::string comment;
};

/// One mutual (job, machine) adjacency. Ranks are positions in the owners'
/// preference lists, 0 = most preferred.
struct Edge {
  int job = -1;
  int machine = -1;
  int job_rank = -1;
  int machine_rank = -1;
  long long capacity = 0;
};

/// Validated bipartite preference system: jobs with sizes, machines with
/// capacities, mutually consistent strict preference lists, per-edge
/// capacities (defaulting to the job size). Immutable after construction;
/// safe to share across threads.
///
/// The optional dummy machine is a solver-internal sink for unassigned load.
/// It is appended by with_dummy(), is last on every job's list, lists every
/// job, and never appears in parsed input or reported output.
class Instance {
 public:
  struct Job {
    std::string id;
    long long size = 0;
    std::vector<int> pref_edges;  // edge ids, best first
  };
  struct Machine {
    std::string id;
    long long capacity = 0;
    std::vector<int> pref_edges;  // edge ids, best first
  };

  int num_jobs() const { return static_cast<int>(jobs_.size()); }
  int num_machines() const { return static_cast<int>(machines_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Job& job(int j) const { return jobs_[j]; }
  const Machine& machine(int m) const { return machines_[m]; }
  const Edge& edge(int e) const { return edges_[e]; }

  const std::vector<Job>& jobs() const { return jobs_; }
  const std::vector<Machine>& machines() const { return machines_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Edge id for the pair (job, machine), or -1 when the edge is absent.
  int find_edge(int job, int machine) const {
    auto it = edge_lookup_.find(pair_key(job, machine));
    return it == edge_lookup_.end() ? -1 : it->second;
  }

  /// Index lookups by identifier; -1 when unknown.
  int job_index(const std::string& id) const;
  int machine_index(const std::string& id) const;

  std::optional<int> dummy() const { return dummy_; }
  bool is_dummy(int machine) const { return dummy_ && *dummy_ == machine; }

  long long total_job_size() const;

  /// "<job>:<machine>" display key for an edge.
  std::string edge_key(int e) const;

  /// Edge id of some edge whose capacity is below its job's size, or -1.
  /// Unsplit solvers refuse such instances; the fractional solver honors
  /// the restriction.
  int first_restrictive_edge() const;

  const std::string& comment() const { return comment_; }

  /// Reconstructs the raw form (declaration order, explicit edge capacities
  /// only). Inverse of validate_instance up to normalization.
  RawInstance to_raw() const;

 private:
  friend Instance validate_instance(const RawInstance& raw);
  friend Instance with_dummy(const Instance& instance);

  static std::uint64_t pair_key(int job, int machine) {
    return (static_cast<std::uint64_t>(job) << 32) |
           static_cast<std::uint32_t>(machine);
  }

  std::vector<Job> jobs_;
  std::vector<Machine> machines_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> job_index_;
  std::unordered_map<std::string, int> machine_index_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
  std::map<std::string, long long> explicit_caps_;
  std::string comment_;
  std::optional<int> dummy_;
};

/// Checks all instance invariants and builds the edge structure.
///
/// Errors: duplicate_identifier (repeated id or repeated entry in a
/// preference list), asymmetric_preference (one side lists the other without
/// reciprocation, or lists an unknown id), non_positive_size (job size < 1,
/// machine capacity < 0, or edge capacity < 1),
/// edge_capacity_on_missing_edge, invalid_identifier (empty id or id
/// containing ':').
Instance validate_instance(const RawInstance& raw);

}  // namespace stalloc
