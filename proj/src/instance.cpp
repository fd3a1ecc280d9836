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

#include "stalloc/instance.hpp"

#include <unordered_set>

namespace stalloc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::duplicate_identifier: return "DuplicateIdentifier";
    case ErrorKind::asymmetric_preference: return "AsymmetricPreference";
    case ErrorKind::non_positive_size: return "NonPositiveSize";
    case ErrorKind::edge_capacity_on_missing_edge:
      return "EdgeCapacityOnMissingEdge";
    case ErrorKind::invalid_identifier: return "InvalidIdentifier";
    case ErrorKind::unknown_edge: return "UnknownEdge";
    case ErrorKind::unknown_machine: return "UnknownMachine";
    case ErrorKind::unknown_job: return "UnknownJob";
    case ErrorKind::assigned_to_unlisted_machine:
      return "AssignedToUnlistedMachine";
    case ErrorKind::infeasible_input: return "InfeasibleInput";
    case ErrorKind::invalid_instance: return "InvalidInstance";
    case ErrorKind::dummy_already_present: return "DummyAlreadyPresent";
    case ErrorKind::not_fully_allocated: return "NotFullyAllocated";
    case ErrorKind::unstable_input: return "UnstableInput";
    case ErrorKind::inconsistent_pointers: return "InconsistentPointers";
    case ErrorKind::zero_epsilon: return "ZeroEpsilon";
    case ErrorKind::search_space_too_large: return "SearchSpaceTooLarge";
    case ErrorKind::invalid_parameters: return "InvalidParameters";
    case ErrorKind::syntax_error: return "SyntaxError";
  }
  return "UnknownError";
}

int Instance::job_index(const std::string& id) const {
  auto it = job_index_.find(id);
  return it == job_index_.end() ? -1 : it->second;
}

int Instance::machine_index(const std::string& id) const {
  auto it = machine_index_.find(id);
  return it == machine_index_.end() ? -1 : it->second;
}

long long Instance::total_job_size() const {
  long long total = 0;
  for (const Job& j : jobs_) total += j.size;
  return total;
}

std::string Instance::edge_key(int e) const {
  const Edge& ed = edges_[e];
  return jobs_[ed.job].id + ":" + machines_[ed.machine].id;
}

int Instance::first_restrictive_edge() const {
  for (int e = 0; e < num_edges(); ++e) {
    if (edges_[e].capacity < jobs_[edges_[e].job].size) return e;
  }
  return -1;
}

RawInstance Instance::to_raw() const {
  RawInstance raw;
  raw.comment = comment_;
  raw.edge_capacities = explicit_caps_;
  raw.jobs.reserve(jobs_.size());
  for (const Job& j : jobs_) {
    RawJob rj;
    rj.id = j.id;
    rj.size = j.size;
    for (int e : j.pref_edges) rj.prefs.push_back(machines_[edges_[e].machine].id);
    raw.jobs.push_back(std::move(rj));
  }
  raw.machines.reserve(machines_.size());
  for (const Machine& m : machines_) {
    RawMachine rm;
    rm.id = m.id;
    rm.capacity = m.capacity;
    for (int e : m.pref_edges) rm.prefs.push_back(jobs_[edges_[e].job].id);
    raw.machines.push_back(std::move(rm));
  }
  return raw;
}

namespace {

void check_identifier(const std::string& id, const char* side) {
  if (id.empty()) {
    fail(ErrorKind::invalid_identifier,
         std::string(side) + " identifier must be non-empty");
  }
  if (id.find(':') != std::string::npos) {
    fail(ErrorKind::invalid_identifier,
         std::string(side) + " identifier '" + id + "' must not contain ':'");
  }
}

}  // namespace

Instance validate_instance(const RawInstance& raw) {
  Instance inst;
  inst.comment_ = raw.comment;

  for (const RawJob& rj : raw.jobs) {
    check_identifier(rj.id, "job");
    if (!inst.job_index_.emplace(rj.id, static_cast<int>(inst.jobs_.size())).second) {
      fail(ErrorKind::duplicate_identifier, "duplicate job id '" + rj.id + "'");
    }
    if (rj.size < 1) {
      fail(ErrorKind::non_positive_size,
           "job '" + rj.id + "' has size " + std::to_string(rj.size) +
               "; sizes must be >= 1");
    }
    inst.jobs_.push_back({rj.id, rj.size, {}});
  }
  for (const RawMachine& rm : raw.machines) {
    check_identifier(rm.id, "machine");
    if (!inst.machine_index_.emplace(rm.id, static_cast<int>(inst.machines_.size()))
             .second) {
      fail(ErrorKind::duplicate_identifier,
           "duplicate machine id '" + rm.id + "'");
    }
    if (rm.capacity < 0) {
      fail(ErrorKind::non_positive_size,
           "machine '" + rm.id + "' has capacity " +
               std::to_string(rm.capacity) + "; capacities must be >= 0");
    }
    inst.machines_.push_back({rm.id, rm.capacity, {}});
  }

  // Mutual consistency: edge jm exists iff each side lists the other,
  // as a strict (duplicate-free) order.
  for (int j = 0; j < inst.num_jobs(); ++j) {
    const RawJob& rj = raw.jobs[j];
    std::unordered_set<int> seen;
    for (int rank = 0; rank < static_cast<int>(rj.prefs.size()); ++rank) {
      const std::string& mid = rj.prefs[rank];
      int m = inst.machine_index(mid);
      if (m < 0) {
        fail(ErrorKind::asymmetric_preference,
             "job '" + rj.id + "' lists unknown machine '" + mid + "'");
      }
      if (!seen.insert(m).second) {
        fail(ErrorKind::duplicate_identifier,
             "job '" + rj.id + "' lists machine '" + mid + "' more than once");
      }
      Edge e;
      e.job = j;
      e.machine = m;
      e.job_rank = rank;
      e.capacity = inst.jobs_[j].size;
      int eid = static_cast<int>(inst.edges_.size());
      inst.edge_lookup_.emplace(Instance::pair_key(j, m), eid);
      inst.jobs_[j].pref_edges.push_back(eid);
      inst.edges_.push_back(e);
    }
  }
  for (int m = 0; m < inst.num_machines(); ++m) {
    const RawMachine& rm = raw.machines[m];
    std::unordered_set<int> seen;
    for (int rank = 0; rank < static_cast<int>(rm.prefs.size()); ++rank) {
      const std::string& jid = rm.prefs[rank];
      int j = inst.job_index(jid);
      if (j < 0) {
        fail(ErrorKind::asymmetric_preference,
             "machine '" + rm.id + "' lists unknown job '" + jid + "'");
      }
      if (!seen.insert(j).second) {
        fail(ErrorKind::duplicate_identifier,
             "machine '" + rm.id + "' lists job '" + jid + "' more than once");
      }
      int eid = inst.find_edge(j, m);
      if (eid < 0) {
        fail(ErrorKind::asymmetric_preference,
             "machine '" + rm.id + "' lists job '" + jid + "' but job '" +
                 jid + "' does not list machine '" + rm.id + "'");
      }
      inst.edges_[eid].machine_rank = rank;
      inst.machines_[m].pref_edges.push_back(eid);
    }
  }
  for (const Edge& e : inst.edges_) {
    if (e.machine_rank < 0) {
      fail(ErrorKind::asymmetric_preference,
           "job '" + inst.jobs_[e.job].id + "' lists machine '" +
               inst.machines_[e.machine].id + "' but machine '" +
               inst.machines_[e.machine].id + "' does not list job '" +
               inst.jobs_[e.job].id + "'");
    }
  }

  for (const auto& [key, cap] : raw.edge_capacities) {
    auto colon = key.find(':');
    std::string jid = colon == std::string::npos ? key : key.substr(0, colon);
    std::string mid = colon == std::string::npos ? "" : key.substr(colon + 1);
    int j = inst.job_index(jid);
    int m = inst.machine_index(mid);
    int eid = (j >= 0 && m >= 0) ? inst.find_edge(j, m) : -1;
    if (eid < 0) {
      fail(ErrorKind::edge_capacity_on_missing_edge,
           "edge capacity given for '" + key + "' but no such edge exists");
    }
    if (cap < 1) {
      fail(ErrorKind::non_positive_size,
           "edge capacity for '" + key + "' is " + std::to_string(cap) +
               "; capacities must be >= 1");
    }
    inst.edges_[eid].capacity = cap;
  }
  inst.explicit_caps_ = raw.edge_capacities;

  return inst;
}

}  // namespace stalloc
