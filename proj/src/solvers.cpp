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

#include "stalloc/solvers.hpp"

#include <deque>
#include <limits>
#include <set>

#include "stalloc/checks.hpp"

namespace stalloc {

namespace {

void require_unsplit_solvable(const Instance& instance) {
  if (instance.dummy()) {
    fail(ErrorKind::invalid_instance,
         "unsplit solvers operate on instances without a dummy machine");
  }
  int e = instance.first_restrictive_edge();
  if (e >= 0) {
    fail(ErrorKind::invalid_instance,
         "edge '" + instance.edge_key(e) +
             "' has capacity below the job size; unsplit assignment cannot "
             "use it");
  }
}

// Prefix sums over a machine's preference positions.
class FenwickTree {
 public:
  explicit FenwickTree(int n) : tree_(static_cast<size_t>(n) + 1, 0) {}

  void add(int i, long long delta) {
    for (++i; i < static_cast<int>(tree_.size()); i += i & -i) tree_[i] += delta;
  }

  // Sum of positions < i.
  long long prefix(int i) const {
    long long sum = 0;
    for (; i > 0; i -= i & -i) sum += tree_[i];
    return sum;
  }

 private:
  std::vector<long long> tree_;
};

}  // namespace

SolveResult solve_machine_optimal(const Instance& instance) {
  require_unsplit_solvable(instance);

  SolveResult result{UnsplitAssignment::empty(instance), {}};
  std::vector<int> current_rank(instance.num_jobs(),
                                std::numeric_limits<int>::max());
  std::vector<long long> load(instance.num_machines(), 0);
  std::vector<int> next_pref(instance.num_machines(), 0);
  std::vector<char> queued(instance.num_machines(), 0);
  std::deque<int> active;
  for (int m = 0; m < instance.num_machines(); ++m) {
    active.push_back(m);
    queued[m] = 1;
  }

  while (!active.empty()) {
    int m = active.front();
    active.pop_front();
    queued[m] = 0;
    const auto& prefs = instance.machine(m).pref_edges;
    while (load[m] < instance.machine(m).capacity &&
           next_pref[m] < static_cast<int>(prefs.size())) {
      const Edge& e = instance.edge(prefs[next_pref[m]++]);
      int j = e.job;
      ++result.trace.proposal_count;
      bool accepted = e.job_rank < current_rank[j];
      result.trace.proposals.push_back({m, j, accepted});
      if (!accepted) {
        ++result.trace.rejection_count;
        continue;
      }
      int old = result.assignment.machine_of[j];
      if (old != UnsplitAssignment::kUnassigned) {
        load[old] -= instance.job(j).size;
        if (!queued[old] && load[old] < instance.machine(old).capacity &&
            next_pref[old] < static_cast<int>(instance.machine(old).pref_edges.size())) {
          active.push_back(old);
          queued[old] = 1;
        }
      }
      result.assignment.machine_of[j] = m;
      current_rank[j] = e.job_rank;
      load[m] += instance.job(j).size;
    }
  }
  return result;
}

SolveResult solve_job_optimal(const Instance& instance) {
  require_unsplit_solvable(instance);

  SolveResult result{UnsplitAssignment::empty(instance), {}};
  std::vector<int> next_pref(instance.num_jobs(), 0);
  std::vector<long long> load(instance.num_machines(), 0);
  std::vector<FenwickTree> held_size;
  std::vector<std::set<int>> held_ranks(instance.num_machines());
  held_size.reserve(instance.num_machines());
  for (int m = 0; m < instance.num_machines(); ++m) {
    held_size.emplace_back(static_cast<int>(instance.machine(m).pref_edges.size()));
  }

  std::deque<int> pending;
  for (int j = 0; j < instance.num_jobs(); ++j) pending.push_back(j);

  while (!pending.empty()) {
    int j = pending.front();
    pending.pop_front();
    const auto& prefs = instance.job(j).pref_edges;
    while (next_pref[j] < static_cast<int>(prefs.size())) {
      const Edge& e = instance.edge(prefs[next_pref[j]++]);
      int m = e.machine;
      ++result.trace.proposal_count;
      long long better_held = held_size[m].prefix(e.machine_rank);
      bool accepted = better_held < instance.machine(m).capacity;
      result.trace.proposals.push_back({j, m, accepted});
      if (!accepted) {
        ++result.trace.rejection_count;
        continue;
      }
      result.assignment.machine_of[j] = m;
      load[m] += instance.job(j).size;
      held_size[m].add(e.machine_rank, instance.job(j).size);
      held_ranks[m].insert(e.machine_rank);
      // Drop the worst held job while the remainder still fills the quota.
      while (!held_ranks[m].empty()) {
        int worst_rank = *held_ranks[m].rbegin();
        int worst_job = instance.edge(instance.machine(m).pref_edges[worst_rank]).job;
        if (load[m] - instance.job(worst_job).size < instance.machine(m).capacity) {
          break;
        }
        held_ranks[m].erase(worst_rank);
        held_size[m].add(worst_rank, -instance.job(worst_job).size);
        load[m] -= instance.job(worst_job).size;
        result.assignment.machine_of[worst_job] = UnsplitAssignment::kUnassigned;
        pending.push_back(worst_job);
      }
      break;
    }
  }
  return result;
}

ExistenceResult decide_unsplit_existence(const Instance& instance) {
  SolveResult mopt = solve_machine_optimal(instance);
  ExistenceResult out;
  out.machine_optimal = mopt.assignment;
  out.min_congestion = total_congestion(instance, mopt.assignment);
  out.exists = out.min_congestion == 0 &&
               relaxed_blocking_edges(instance, mopt.assignment).empty();
  return out;
}

}  // namespace stalloc
