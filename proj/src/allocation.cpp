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

#include "stalloc/allocation.hpp"

namespace stalloc {

Allocation Allocation::from_amounts(
    const Instance& instance, const std::map<std::string, long long>& amounts) {
  Allocation alloc(instance);
  for (const auto& [key, value] : amounts) {
    auto colon = key.find(':');
    std::string jid = colon == std::string::npos ? key : key.substr(0, colon);
    std::string mid = colon == std::string::npos ? "" : key.substr(colon + 1);
    int j = instance.job_index(jid);
    int m = instance.machine_index(mid);
    int e = (j >= 0 && m >= 0) ? instance.find_edge(j, m) : -1;
    if (e < 0) {
      fail(ErrorKind::unknown_edge,
           "allocation references edge '" + key + "' which is not in the instance");
    }
    if (value < 0) {
      fail(ErrorKind::syntax_error,
           "allocation amount for '" + key + "' is negative");
    }
    alloc.set(e, value);
  }
  return alloc;
}

std::map<std::string, long long> Allocation::to_amounts(
    const Instance& instance, bool include_dummy) const {
  std::map<std::string, long long> out;
  for (int e = 0; e < num_edges(); ++e) {
    if (amounts_[e] == 0) continue;
    if (!include_dummy && instance.is_dummy(instance.edge(e).machine)) continue;
    out[instance.edge_key(e)] = amounts_[e];
  }
  return out;
}

std::vector<long long> job_loads(const Instance& instance,
                                 const Allocation& allocation) {
  std::vector<long long> loads(instance.num_jobs(), 0);
  for (int e = 0; e < instance.num_edges(); ++e) {
    loads[instance.edge(e).job] += allocation.amount(e);
  }
  return loads;
}

std::vector<long long> machine_loads(const Instance& instance,
                                     const Allocation& allocation) {
  std::vector<long long> loads(instance.num_machines(), 0);
  for (int e = 0; e < instance.num_edges(); ++e) {
    loads[instance.edge(e).machine] += allocation.amount(e);
  }
  return loads;
}

void require_same_shape(const Instance& instance, const Allocation& allocation) {
  if (allocation.num_edges() != instance.num_edges()) {
    fail(ErrorKind::unknown_edge,
         "allocation has " + std::to_string(allocation.num_edges()) +
             " edges but the instance has " + std::to_string(instance.num_edges()));
  }
}

Allocation UnsplitAssignment::to_allocation(const Instance& instance) const {
  Allocation alloc(instance);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    int m = machine_of[j];
    if (m == kUnassigned) {
      if (auto dummy = instance.dummy()) m = *dummy;
      else continue;
    }
    int e = instance.find_edge(j, m);
    if (e < 0) {
      fail(ErrorKind::assigned_to_unlisted_machine,
           "job '" + instance.job(j).id + "' is assigned to machine '" +
               instance.machine(m).id + "' which is not on its preference list");
    }
    alloc.set(e, instance.job(j).size);
  }
  return alloc;
}

UnsplitAssignment UnsplitAssignment::from_allocation(const Instance& instance,
                                                     const Allocation& allocation) {
  require_same_shape(instance, allocation);
  UnsplitAssignment out = empty(instance);
  std::vector<long long> loads(instance.num_jobs(), 0);
  for (int e = 0; e < instance.num_edges(); ++e) {
    long long x = allocation.amount(e);
    if (x == 0) continue;
    const Edge& ed = instance.edge(e);
    if (x != instance.job(ed.job).size || loads[ed.job] != 0) {
      fail(ErrorKind::invalid_instance,
           "allocation is not unsplit at job '" + instance.job(ed.job).id + "'");
    }
    loads[ed.job] = x;
    out.machine_of[ed.job] =
        instance.is_dummy(ed.machine) ? kUnassigned : ed.machine;
  }
  return out;
}

}  // namespace stalloc
