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

#include "stalloc/checks.hpp"

#include <algorithm>
#include <limits>

namespace stalloc {

long long total_size(const Instance& instance, const Allocation& allocation) {
  require_same_shape(instance, allocation);
  long long total = 0;
  for (int e = 0; e < instance.num_edges(); ++e) {
    if (!instance.is_dummy(instance.edge(e).machine)) total += allocation.amount(e);
  }
  return total;
}

long long total_size(const Instance& instance, const UnsplitAssignment& assignment) {
  long long total = 0;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    int m = assignment.machine_of[j];
    if (m != UnsplitAssignment::kUnassigned && !instance.is_dummy(m)) {
      total += instance.job(j).size;
    }
  }
  return total;
}

long long total_congestion(const Instance& instance, const Allocation& allocation) {
  require_same_shape(instance, allocation);
  std::vector<long long> loads = machine_loads(instance, allocation);
  long long total = 0;
  for (int m = 0; m < instance.num_machines(); ++m) {
    if (instance.is_dummy(m)) continue;
    total += std::max(0LL, loads[m] - instance.machine(m).capacity);
  }
  return total;
}

long long total_congestion(const Instance& instance,
                           const UnsplitAssignment& assignment) {
  return total_congestion(instance, assignment.to_allocation(instance));
}

StabilityReport check_fractional_feasibility(const Instance& instance,
                                             const Allocation& allocation) {
  require_same_shape(instance, allocation);
  StabilityReport report;
  report.mode = StabilityMode::fractional;
  for (int e = 0; e < instance.num_edges(); ++e) {
    long long x = allocation.amount(e);
    const Edge& ed = instance.edge(e);
    if (x < 0) {
      report.feasibility_violations.push_back(
          {"edge_capacity", instance.edge_key(e), "negative amount"});
    } else if (x > ed.capacity) {
      report.feasibility_violations.push_back(
          {"edge_capacity", instance.edge_key(e),
           std::to_string(x) + " > " + std::to_string(ed.capacity)});
    }
  }
  std::vector<long long> jl = job_loads(instance, allocation);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    if (jl[j] > instance.job(j).size) {
      report.feasibility_violations.push_back(
          {"job_size", instance.job(j).id,
           std::to_string(jl[j]) + " > " + std::to_string(instance.job(j).size)});
    }
  }
  std::vector<long long> ml = machine_loads(instance, allocation);
  for (int m = 0; m < instance.num_machines(); ++m) {
    if (instance.is_dummy(m)) continue;
    if (ml[m] > instance.machine(m).capacity) {
      report.feasibility_violations.push_back(
          {"machine_capacity", instance.machine(m).id,
           std::to_string(ml[m]) + " > " +
               std::to_string(instance.machine(m).capacity)});
    }
  }
  return report;
}

StabilityReport check_relaxed_unsplit_feasibility(
    const Instance& instance, const UnsplitAssignment& assignment) {
  StabilityReport report;
  report.mode = StabilityMode::relaxed_unsplit;

  // Per machine: total assigned size and the size of the assignee the
  // machine ranks worst.
  std::vector<long long> load(instance.num_machines(), 0);
  std::vector<int> worst_rank(instance.num_machines(), -1);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    int m = assignment.machine_of[j];
    if (m == UnsplitAssignment::kUnassigned) continue;
    int e = (m >= 0 && m < instance.num_machines()) ? instance.find_edge(j, m) : -1;
    if (e < 0) {
      fail(ErrorKind::assigned_to_unlisted_machine,
           "job '" + instance.job(j).id +
               "' is assigned to a machine that is not on its preference list");
    }
    if (instance.job(j).size > instance.edge(e).capacity) {
      report.feasibility_violations.push_back(
          {"edge_capacity", instance.edge_key(e),
           "job size " + std::to_string(instance.job(j).size) +
               " exceeds edge capacity " +
               std::to_string(instance.edge(e).capacity)});
    }
    load[m] += instance.job(j).size;
    worst_rank[m] = std::max(worst_rank[m], instance.edge(e).machine_rank);
  }
  for (int m = 0; m < instance.num_machines(); ++m) {
    if (instance.is_dummy(m) || worst_rank[m] < 0) continue;
    const Edge& worst = instance.edge(instance.machine(m).pref_edges[worst_rank[m]]);
    long long without_worst = load[m] - instance.job(worst.job).size;
    if (without_worst >= instance.machine(m).capacity) {
      report.feasibility_violations.push_back(
          {"relaxed_capacity", instance.machine(m).id,
           "load " + std::to_string(load[m]) + " minus worst assignee '" +
               instance.job(worst.job).id + "' leaves " +
               std::to_string(without_worst) + " >= capacity " +
               std::to_string(instance.machine(m).capacity)});
    }
  }
  return report;
}

namespace {

void require_feasible(const StabilityReport& report, const char* what) {
  if (!report.feasible()) {
    fail(ErrorKind::infeasible_input,
         std::string(what) + " is infeasible: " +
             report.feasibility_violations.front().kind + " at '" +
             report.feasibility_violations.front().entity + "'");
  }
}

}  // namespace

std::vector<int> fractional_blocking_edges(const Instance& instance,
                                           const Allocation& allocation) {
  require_feasible(check_fractional_feasibility(instance, allocation),
                   "allocation");

  // Machine side: an edge is closed once the machine's allocation on edges
  // it ranks at least as high reaches its capacity.
  std::vector<char> machine_closed(instance.num_edges(), 0);
  for (int m = 0; m < instance.num_machines(); ++m) {
    long long cum = 0;
    for (int e : instance.machine(m).pref_edges) {
      cum += allocation.amount(e);
      machine_closed[e] = cum >= instance.machine(m).capacity;
    }
  }

  std::vector<int> blocking;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    long long cum = 0;
    for (int e : instance.job(j).pref_edges) {
      cum += allocation.amount(e);
      if (instance.is_dummy(instance.edge(e).machine)) continue;
      bool job_open = cum < instance.job(j).size;
      if (allocation.amount(e) < instance.edge(e).capacity && job_open &&
          !machine_closed[e]) {
        blocking.push_back(e);
      }
    }
  }
  return blocking;
}

std::vector<int> relaxed_blocking_edges(const Instance& instance,
                                        const UnsplitAssignment& assignment) {
  require_feasible(check_relaxed_unsplit_feasibility(instance, assignment),
                   "assignment");

  // Per edge: total size of jobs assigned to the machine that it strictly
  // prefers to the edge's job.
  std::vector<long long> better_mass(instance.num_edges(), 0);
  for (int m = 0; m < instance.num_machines(); ++m) {
    long long cum = 0;
    for (int e : instance.machine(m).pref_edges) {
      better_mass[e] = cum;
      int j = instance.edge(e).job;
      if (assignment.machine_of[j] == m) cum += instance.job(j).size;
    }
  }

  std::vector<int> blocking;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    int assigned = assignment.machine_of[j];
    int assigned_rank = std::numeric_limits<int>::max();
    if (assigned != UnsplitAssignment::kUnassigned &&
        !instance.is_dummy(assigned)) {
      assigned_rank = instance.edge(instance.find_edge(j, assigned)).job_rank;
    }
    for (int e : instance.job(j).pref_edges) {
      const Edge& ed = instance.edge(e);
      if (ed.job_rank >= assigned_rank) break;
      if (instance.is_dummy(ed.machine)) continue;
      if (better_mass[e] < instance.machine(ed.machine).capacity) {
        blocking.push_back(e);
      }
    }
  }
  return blocking;
}

LexOrder lex_compare_machine(const Instance& instance, const UnsplitAssignment& x1,
                             const UnsplitAssignment& x2, int machine) {
  if (machine < 0 || machine >= instance.num_machines()) {
    fail(ErrorKind::unknown_machine,
         "machine index " + std::to_string(machine) + " is out of range");
  }
  for (int e : instance.machine(machine).pref_edges) {
    int j = instance.edge(e).job;
    bool in1 = x1.machine_of[j] == machine;
    bool in2 = x2.machine_of[j] == machine;
    if (in1 != in2) return in1 ? LexOrder::prefers_x1 : LexOrder::prefers_x2;
  }
  return LexOrder::equal;
}

std::vector<MachineStatus> classify_machines(const Instance& instance,
                                             const Allocation& allocation) {
  require_same_shape(instance, allocation);
  std::vector<long long> ml = machine_loads(instance, allocation);
  std::vector<long long> jl = job_loads(instance, allocation);

  std::vector<MachineStatus> status(instance.num_machines());
  for (int m = 0; m < instance.num_machines(); ++m) {
    long long cap = instance.machine(m).capacity;
    status[m].saturation = ml[m] > cap    ? Saturation::over_capacitated
                           : ml[m] == cap ? Saturation::saturated
                                          : Saturation::under;
  }

  // A job with unallocated size effectively holds mass ranked below its
  // whole list, so every listed machine counts as preferred to it.
  for (int j = 0; j < instance.num_jobs(); ++j) {
    int threshold = std::numeric_limits<int>::max();
    if (jl[j] >= instance.job(j).size) {
      threshold = -1;
      for (int e : instance.job(j).pref_edges) {
        if (allocation.amount(e) > 0) threshold = instance.edge(e).job_rank;
      }
    }
    for (int e : instance.job(j).pref_edges) {
      if (instance.edge(e).job_rank >= threshold) break;
      status[instance.edge(e).machine].popular = true;
    }
  }
  if (auto dummy = instance.dummy()) status[*dummy].popular = false;
  return status;
}

}  // namespace stalloc
