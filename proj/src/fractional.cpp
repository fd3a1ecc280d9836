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

#include "stalloc/fractional.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace stalloc {

static const char kDummyId[] = "_dummy";

Instance with_dummy(const Instance& instance) {
  if (instance.dummy()) {
    fail(ErrorKind::dummy_already_present,
         "instance already has a dummy machine");
  }
  RawInstance raw = instance.to_raw();
  RawMachine dummy;
  dummy.id = kDummyId;
  dummy.capacity = instance.total_job_size();
  for (RawJob& job : raw.jobs) {
    job.prefs.push_back(kDummyId);
    dummy.prefs.push_back(job.id);
  }
  raw.machines.push_back(std::move(dummy));
  Instance out = validate_instance(raw);
  out.dummy_ = out.num_machines() - 1;
  return out;
}

Allocation complete_with_dummy(const Instance& instance,
                               const Allocation& allocation) {
  if (!instance.dummy()) {
    fail(ErrorKind::invalid_instance, "instance has no dummy machine");
  }
  require_same_shape(instance, allocation);
  Allocation out = allocation;
  std::vector<long long> loads = job_loads(instance, allocation);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    long long deficit = instance.job(j).size - loads[j];
    if (deficit > 0) {
      out.add(instance.find_edge(j, *instance.dummy()), deficit);
    }
  }
  return out;
}

FractionalResult solve_fractional_stable(const Instance& instance) {
  if (!instance.dummy()) {
    fail(ErrorKind::invalid_instance,
         "fractional solving requires the dummy machine; call with_dummy first");
  }

  FractionalResult result{Allocation(instance), 0};
  Allocation& x = result.allocation;
  std::vector<long long> pending_amount(instance.num_jobs());
  std::vector<int> next_pref(instance.num_jobs(), 0);
  std::vector<long long> load(instance.num_machines(), 0);
  std::vector<char> closed(instance.num_edges(), 0);
  // Machine ranks of edges with positive amount, per machine; the reclaim
  // step needs the worst one.
  std::vector<std::set<int>> positive_ranks(instance.num_machines());

  std::vector<char> queued(instance.num_jobs(), 1);
  std::deque<int> pending;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    pending_amount[j] = instance.job(j).size;
    pending.push_back(j);
  }

  auto gain = [&](int e, long long delta) {
    const Edge& ed = instance.edge(e);
    if (x.amount(e) == 0 && delta > 0) positive_ranks[ed.machine].insert(ed.machine_rank);
    x.add(e, delta);
    if (x.amount(e) == 0) positive_ranks[ed.machine].erase(ed.machine_rank);
  };

  while (!pending.empty()) {
    int j = pending.front();
    pending.pop_front();
    queued[j] = 0;
    const auto& prefs = instance.job(j).pref_edges;
    while (pending_amount[j] > 0 && next_pref[j] < static_cast<int>(prefs.size())) {
      int e = prefs[next_pref[j]];
      const Edge& ed = instance.edge(e);
      if (closed[e] || x.amount(e) == ed.capacity) {
        ++next_pref[j];
        continue;
      }
      int m = ed.machine;
      long long offer = std::min(pending_amount[j], ed.capacity - x.amount(e));
      ++result.offer_count;

      long long take = std::min(offer, std::max(0LL, instance.machine(m).capacity - load[m]));
      gain(e, take);
      load[m] += take;
      pending_amount[j] -= take;
      offer -= take;

      // Reclaim from strictly worse positive edges to make room.
      while (offer > 0 && !positive_ranks[m].empty() &&
             *positive_ranks[m].rbegin() > ed.machine_rank) {
        int worst_rank = *positive_ranks[m].rbegin();
        int worst_edge = instance.machine(m).pref_edges[worst_rank];
        int worst_job = instance.edge(worst_edge).job;
        long long reclaimed = std::min(x.amount(worst_edge), offer);
        gain(worst_edge, -reclaimed);
        closed[worst_edge] = 1;
        pending_amount[worst_job] += reclaimed;
        if (!queued[worst_job]) {
          pending.push_back(worst_job);
          queued[worst_job] = 1;
        }
        gain(e, reclaimed);
        pending_amount[j] -= reclaimed;
        offer -= reclaimed;
      }
      if (offer > 0) closed[e] = 1;
    }
  }
  return result;
}

}  // namespace stalloc
