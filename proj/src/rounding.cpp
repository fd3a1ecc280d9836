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

#include "stalloc/rounding.hpp"

#include <algorithm>
#include <limits>

#include "stalloc/checks.hpp"
#include "stalloc/fractional.hpp"

namespace stalloc {

namespace {

void require_roundable(const Instance& instance) {
  if (!instance.dummy()) {
    fail(ErrorKind::invalid_instance,
         "rounding requires the dummy machine; call with_dummy first");
  }
  int e = instance.first_restrictive_edge();
  if (e >= 0) {
    fail(ErrorKind::invalid_instance,
         "edge '" + instance.edge_key(e) +
             "' has capacity below the job size; rounding moves whole job "
             "sizes along edges");
  }
}

}  // namespace

PointerState compute_pointers(const Instance& instance,
                              const Allocation& allocation) {
  require_same_shape(instance, allocation);
  PointerState ps;
  ps.refusal_edge.assign(instance.num_jobs(), -1);
  ps.machine_popular.assign(instance.num_machines(), 0);
  ps.machine_dangerous.assign(instance.num_machines(), 0);
  ps.best_proposal_edge.assign(instance.num_machines(), -1);
  ps.positive_proposal_edge.assign(instance.num_machines(), -1);

  for (int j = 0; j < instance.num_jobs(); ++j) {
    const auto& prefs = instance.job(j).pref_edges;
    long long total = 0;
    int worst_positive = -1;
    for (int e : prefs) {
      if (allocation.amount(e) > 0) {
        total += allocation.amount(e);
        worst_positive = e;
      }
    }
    if (total != instance.job(j).size) {
      fail(ErrorKind::not_fully_allocated,
           "job '" + instance.job(j).id + "' carries " + std::to_string(total) +
               " of size " + std::to_string(instance.job(j).size));
    }
    // Fully on the first choice: nothing to refuse, nothing to propose.
    if (!prefs.empty() && allocation.amount(prefs.front()) == instance.job(j).size) {
      continue;
    }
    ps.refusal_edge[j] = worst_positive;
    int refusal_rank = instance.edge(worst_positive).job_rank;
    for (int e : prefs) {
      const Edge& ed = instance.edge(e);
      if (ed.job_rank >= refusal_rank) break;
      int m = ed.machine;
      ps.machine_popular[m] = 1;
      if (ps.best_proposal_edge[m] == -1 ||
          ed.machine_rank < instance.edge(ps.best_proposal_edge[m]).machine_rank) {
        ps.best_proposal_edge[m] = e;
      }
      if (allocation.amount(e) > 0) {
        if (ps.positive_proposal_edge[m] != -1) {
          fail(ErrorKind::unstable_input,
               "machine '" + instance.machine(m).id +
                   "' has two positive incoming proposal edges; the "
                   "allocation is not stable");
        }
        ps.positive_proposal_edge[m] = e;
      }
    }
  }

  std::vector<long long> loads = machine_loads(instance, allocation);
  for (int m = 0; m < instance.num_machines(); ++m) {
    ps.machine_dangerous[m] = ps.machine_popular[m] &&
                              loads[m] > instance.machine(m).capacity &&
                              ps.positive_proposal_edge[m] == -1;
  }
  return ps;
}

std::optional<Rotation> find_rotation(const Instance& instance,
                                      const Allocation& allocation,
                                      const PointerState& pointers) {
  int start = -1;
  for (int m = 0; m < instance.num_machines(); ++m) {
    if (pointers.positive_proposal_edge[m] != -1) {
      start = m;
      break;
    }
  }
  if (start < 0) return std::nullopt;

  Rotation rot;
  std::vector<char> visited(instance.num_machines(), 0);
  int machine = start;
  int proposal = pointers.positive_proposal_edge[start];
  for (;;) {
    int job = instance.edge(proposal).job;
    int refusal = pointers.refusal_edge[job];
    if (refusal < 0) {
      fail(ErrorKind::inconsistent_pointers,
           "job '" + instance.job(job).id +
               "' has a proposal edge but no refusal edge");
    }
    visited[machine] = 1;
    rot.steps.push_back({proposal, refusal});

    int next = instance.edge(refusal).machine;
    if (visited[next]) {
      // Keep just the cycle: drop steps before the first visit of `next`.
      auto first = std::find_if(rot.steps.begin(), rot.steps.end(),
                                [&](const RotationStep& s) {
                                  return instance.edge(s.proposal_edge).machine == next;
                                });
      rot.steps.erase(rot.steps.begin(), first);
      rot.kind = Rotation::Kind::cycle;
      return rot;
    }
    if (!pointers.machine_popular[next]) {
      rot.kind = Rotation::Kind::path_unpopular;
      return rot;
    }
    if (pointers.machine_dangerous[next]) {
      rot.kind = Rotation::Kind::path_dangerous;
      std::vector<long long> loads = machine_loads(instance, allocation);
      rot.slack = loads[next] - instance.machine(next).capacity;
      return rot;
    }
    machine = next;
    proposal = pointers.best_proposal_edge[next];
    if (proposal < 0) {
      fail(ErrorKind::inconsistent_pointers,
           "machine '" + instance.machine(next).id +
               "' is popular but has no proposal edge");
    }
  }
}

Allocation apply_rotation(const Instance& instance, const Allocation& allocation,
                          const Rotation& rotation) {
  require_same_shape(instance, allocation);
  long long eps = std::numeric_limits<long long>::max();
  for (const RotationStep& step : rotation.steps) {
    eps = std::min(eps, allocation.amount(step.refusal_edge));
  }
  if (rotation.kind == Rotation::Kind::path_dangerous) {
    eps = std::min(eps, rotation.slack);
  }
  if (rotation.steps.empty() || eps <= 0) {
    fail(ErrorKind::zero_epsilon,
         "rotation admits no positive shift; pointer state is inconsistent");
  }
  Allocation out = allocation;
  for (const RotationStep& step : rotation.steps) {
    out.add(step.proposal_edge, eps);
    out.add(step.refusal_edge, -eps);
  }
  return out;
}

RoundResult round_to_unsplit(const Instance& instance, const Allocation& seed) {
  require_roundable(instance);
  require_same_shape(instance, seed);
  {
    StabilityReport feas = check_fractional_feasibility(instance, seed);
    if (!feas.feasible()) {
      fail(ErrorKind::infeasible_input,
           "seed allocation is not fractional-feasible: " +
               feas.feasibility_violations.front().kind + " at '" +
               feas.feasibility_violations.front().entity + "'");
    }
    if (!fractional_blocking_edges(instance, seed).empty()) {
      fail(ErrorKind::unstable_input, "seed allocation has a blocking edge");
    }
  }

  RoundResult result;
  Allocation x = seed;
  // At most one regular augmentation kills each edge and each dangerous
  // augmentation consumes a prior pointer collapse, so 2|E| bounds the loop.
  long long bound = 2LL * instance.num_edges() + 1;
  for (;;) {
    PointerState ps = compute_pointers(instance, x);
    std::optional<Rotation> rot = find_rotation(instance, x, ps);
    if (!rot) break;
    x = apply_rotation(instance, x, *rot);
    if (++result.augmentation_count > bound) {
      fail(ErrorKind::inconsistent_pointers,
           "augmentation count exceeded twice the edge count");
    }
  }
  result.assignment = UnsplitAssignment::from_allocation(instance, x);
  return result;
}

RoundResult round_to_unsplit(const Instance& instance) {
  Instance dummied = with_dummy(instance);
  FractionalResult seed = solve_fractional_stable(dummied);
  return round_to_unsplit(dummied, seed.allocation);
}

}  // namespace stalloc
