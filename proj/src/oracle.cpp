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

#include "stalloc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "stalloc/checks.hpp"
#include "stalloc/fractional.hpp"
#include "stalloc/generate.hpp"
#include "stalloc/rounding.hpp"
#include "stalloc/solvers.hpp"

namespace stalloc {

namespace {

void require_plain_instance(const Instance& instance, const char* what) {
  if (instance.dummy()) {
    fail(ErrorKind::invalid_instance,
         std::string(what) + " operates on instances without a dummy machine");
  }
}

std::string describe_assignment(const Instance& instance,
                                const UnsplitAssignment& assignment) {
  std::string out = "{";
  for (int j = 0; j < instance.num_jobs(); ++j) {
    if (j > 0) out += ", ";
    out += instance.job(j).id;
    out += "->";
    int m = assignment.machine_of[j];
    out += m == UnsplitAssignment::kUnassigned ? std::string("-")
                                               : instance.machine(m).id;
  }
  return out + "}";
}

// Enumeration state for relaxed unsplit assignments: per-machine load plus
// the ranks of current assignees, so the relaxed capacity condition can be
// checked incrementally (it only ever tightens as assignees are added).
struct RelaxedEnumerator {
  const Instance& instance;
  long long limit;
  UnsplitAssignment current;
  std::vector<long long> load;
  std::vector<std::set<int>> assignee_ranks;
  std::vector<std::vector<int>> choices;  // per job: machines by index order
  std::vector<UnsplitAssignment> out;

  explicit RelaxedEnumerator(const Instance& inst, long long lim)
      : instance(inst),
        limit(lim),
        current(UnsplitAssignment::empty(inst)),
        load(inst.num_machines(), 0),
        assignee_ranks(inst.num_machines()) {
    choices.resize(inst.num_jobs());
    for (int j = 0; j < inst.num_jobs(); ++j) {
      for (int e : inst.job(j).pref_edges) choices[j].push_back(inst.edge(e).machine);
      std::sort(choices[j].begin(), choices[j].end());
    }
  }

  bool relaxed_ok(int m) const {
    if (assignee_ranks[m].empty()) return true;
    int worst_rank = *assignee_ranks[m].rbegin();
    int worst_job = instance.edge(instance.machine(m).pref_edges[worst_rank]).job;
    return load[m] - instance.job(worst_job).size <
           instance.machine(m).capacity;
  }

  void run(int j) {
    if (j == instance.num_jobs()) {
      if (relaxed_blocking_edges(instance, current).empty()) out.push_back(current);
      return;
    }
    for (int m : choices[j]) {
      int e = instance.find_edge(j, m);
      current.machine_of[j] = m;
      load[m] += instance.job(j).size;
      assignee_ranks[m].insert(instance.edge(e).machine_rank);
      if (relaxed_ok(m)) run(j + 1);
      assignee_ranks[m].erase(instance.edge(e).machine_rank);
      load[m] -= instance.job(j).size;
    }
    current.machine_of[j] = UnsplitAssignment::kUnassigned;
    run(j + 1);
  }
};

}  // namespace

std::vector<UnsplitAssignment> enumerate_relaxed_stable(const Instance& instance,
                                                        long long limit) {
  require_plain_instance(instance, "enumerate_relaxed_stable");
  long long space = 1;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    long long options = static_cast<long long>(instance.job(j).pref_edges.size()) + 1;
    if (space > limit / options) {
      fail(ErrorKind::search_space_too_large,
           "assignment space exceeds the enumeration limit of " +
               std::to_string(limit));
    }
    space *= options;
  }
  RelaxedEnumerator enumerator(instance, limit);
  enumerator.run(0);
  return std::move(enumerator.out);
}

namespace {

struct FractionalEnumerator {
  const Instance& instance;
  long long limit;
  long long nodes = 0;
  Allocation current;
  std::vector<long long> load;
  std::vector<Allocation> out;

  FractionalEnumerator(const Instance& inst, long long lim)
      : instance(inst), limit(lim), current(inst), load(inst.num_machines(), 0) {}

  void bump() {
    if (++nodes > limit) {
      fail(ErrorKind::search_space_too_large,
           "fractional enumeration exceeded the node limit of " +
               std::to_string(limit));
    }
  }

  // Distributes the remaining size of job j over its edges from pref
  // position p onward; every job must end exactly at its size.
  void run(int j, int p, long long remaining) {
    bump();
    if (j == instance.num_jobs()) {
      if (fractional_blocking_edges(instance, current).empty()) {
        out.push_back(current);
      }
      return;
    }
    const auto& prefs = instance.job(j).pref_edges;
    if (p == static_cast<int>(prefs.size())) {
      if (remaining == 0) run(j + 1, 0, j + 1 < instance.num_jobs()
                                             ? instance.job(j + 1).size
                                             : 0);
      return;
    }
    int e = prefs[p];
    int m = instance.edge(e).machine;
    long long headroom = instance.is_dummy(m)
                             ? remaining
                             : instance.machine(m).capacity - load[m];
    long long max_amount =
        std::min({remaining, instance.edge(e).capacity, std::max(0LL, headroom)});
    for (long long a = 0; a <= max_amount; ++a) {
      current.set(e, a);
      load[m] += a;
      run(j, p + 1, remaining - a);
      load[m] -= a;
    }
    current.set(e, 0);
  }
};

}  // namespace

std::vector<Allocation> enumerate_fractional_stable(const Instance& instance,
                                                    long long limit) {
  if (!instance.dummy()) {
    fail(ErrorKind::invalid_instance,
         "enumerate_fractional_stable requires the dummy machine");
  }
  FractionalEnumerator enumerator(instance, limit);
  enumerator.run(0, 0, instance.num_jobs() > 0 ? instance.job(0).size : 0);
  return std::move(enumerator.out);
}

namespace {

int assigned_rank(const Instance& instance, const UnsplitAssignment& x, int j) {
  int m = x.machine_of[j];
  if (m == UnsplitAssignment::kUnassigned) return std::numeric_limits<int>::max();
  return instance.edge(instance.find_edge(j, m)).job_rank;
}

}  // namespace

TheoremReport verify_structure(const Instance& instance, long long limit) {
  require_plain_instance(instance, "verify_structure");
  TheoremReport report;
  auto add = [&report](const std::string& name, bool pass,
                       const std::string& detail = "") {
    report.checks.push_back({name, pass, pass ? "" : detail});
  };

  const long long edges = instance.num_edges();
  SolveResult mopt = solve_machine_optimal(instance);
  SolveResult jopt = solve_job_optimal(instance);
  ExistenceResult decision = decide_unsplit_existence(instance);
  RoundResult rounded = round_to_unsplit(instance);
  std::vector<UnsplitAssignment> stable_set = enumerate_relaxed_stable(instance, limit);

  add("machine_optimal_stable",
      check_relaxed_unsplit_feasibility(instance, mopt.assignment).feasible() &&
          relaxed_blocking_edges(instance, mopt.assignment).empty(),
      describe_assignment(instance, mopt.assignment));
  add("job_optimal_stable",
      check_relaxed_unsplit_feasibility(instance, jopt.assignment).feasible() &&
          relaxed_blocking_edges(instance, jopt.assignment).empty(),
      describe_assignment(instance, jopt.assignment));

  auto in_set = [&stable_set](const UnsplitAssignment& x) {
    return std::find(stable_set.begin(), stable_set.end(), x) != stable_set.end();
  };
  add("machine_optimal_in_set", in_set(mopt.assignment),
      describe_assignment(instance, mopt.assignment));
  add("job_optimal_in_set", in_set(jopt.assignment),
      describe_assignment(instance, jopt.assignment));
  add("rounder_in_set", in_set(rounded.assignment),
      describe_assignment(instance, rounded.assignment));

  long long mopt_size = total_size(instance, mopt.assignment);
  long long jopt_size = total_size(instance, jopt.assignment);
  long long mopt_congestion = total_congestion(instance, mopt.assignment);
  {
    bool pass = true;
    std::string detail;
    for (const UnsplitAssignment& x : stable_set) {
      long long size = total_size(instance, x);
      if (size < mopt_size || size > jopt_size) {
        pass = false;
        detail = "size " + std::to_string(size) + " outside [" +
                 std::to_string(mopt_size) + ", " + std::to_string(jopt_size) +
                 "] at " + describe_assignment(instance, x);
        break;
      }
    }
    add("size_extremes", pass, detail);
  }
  {
    bool pass = true;
    std::string detail;
    for (const UnsplitAssignment& x : stable_set) {
      if (total_congestion(instance, x) < mopt_congestion) {
        pass = false;
        detail = "congestion below machine-optimal at " +
                 describe_assignment(instance, x);
        break;
      }
    }
    add("congestion_minimal", pass, detail);
  }
  {
    bool pass = true;
    std::string detail;
    for (const UnsplitAssignment& x : stable_set) {
      for (int m = 0; m < instance.num_machines() && pass; ++m) {
        if (lex_compare_machine(instance, mopt.assignment, x, m) ==
            LexOrder::prefers_x2) {
          pass = false;
          detail = "machine '" + instance.machine(m).id +
                   "' prefers " + describe_assignment(instance, x) +
                   " to the machine-optimal solution";
        }
        if (pass && lex_compare_machine(instance, jopt.assignment, x, m) ==
                        LexOrder::prefers_x1) {
          pass = false;
          detail = "machine '" + instance.machine(m).id +
                   "' prefers the job-optimal solution to " +
                   describe_assignment(instance, x);
        }
      }
      if (!pass) break;
    }
    add("machine_lex_duality", pass, detail);
  }
  {
    bool pass = true;
    std::string detail;
    for (const UnsplitAssignment& x : stable_set) {
      for (int j = 0; j < instance.num_jobs() && pass; ++j) {
        int rank_x = assigned_rank(instance, x, j);
        if (assigned_rank(instance, jopt.assignment, j) > rank_x ||
            assigned_rank(instance, mopt.assignment, j) < rank_x) {
          pass = false;
          detail = "job '" + instance.job(j).id + "' breaks rank duality at " +
                   describe_assignment(instance, x);
        }
      }
      if (!pass) break;
    }
    add("job_rank_duality", pass, detail);
  }
  {
    bool pass = true;
    std::string detail;
    for (int j = 0; j < instance.num_jobs() && pass; ++j) {
      bool jopt_unassigned = !jopt.assignment.assigned(j);
      bool mopt_assigned = mopt.assignment.assigned(j);
      for (const UnsplitAssignment& x : stable_set) {
        if ((jopt_unassigned && x.assigned(j)) ||
            (mopt_assigned && !x.assigned(j))) {
          pass = false;
          detail = "job '" + instance.job(j).id +
                   "' contradicts assignment persistence at " +
                   describe_assignment(instance, x);
          break;
        }
      }
    }
    add("job_assignment_persistence", pass, detail);
  }
  {
    std::vector<long long> mopt_load =
        machine_loads(instance, mopt.assignment.to_allocation(instance));
    std::vector<long long> jopt_load =
        machine_loads(instance, jopt.assignment.to_allocation(instance));
    bool pass = true;
    std::string detail;
    for (const UnsplitAssignment& x : stable_set) {
      std::vector<long long> x_load =
          machine_loads(instance, x.to_allocation(instance));
      for (int m = 0; m < instance.num_machines() && pass; ++m) {
        long long cap = instance.machine(m).capacity;
        if (mopt_load[m] < cap && x_load[m] > mopt_load[m]) {
          pass = false;
          detail = "machine '" + instance.machine(m).id +
                   "' exceeds its machine-optimal load in " +
                   describe_assignment(instance, x);
        }
        if (pass && jopt_load[m] > cap && x_load[m] < cap) {
          pass = false;
          detail = "machine '" + instance.machine(m).id +
                   "' is over capacity in the job-optimal solution but "
                   "unsaturated in " +
                   describe_assignment(instance, x);
        }
      }
      if (!pass) break;
    }
    add("rural_hospital_variant", pass, detail);
  }
  {
    bool any_zero_congestion = false;
    for (const UnsplitAssignment& x : stable_set) {
      if (total_congestion(instance, x) == 0) {
        any_zero_congestion = true;
        break;
      }
    }
    bool pass = decision.exists == any_zero_congestion &&
                (!decision.exists ||
                 total_congestion(instance, decision.machine_optimal) == 0);
    add("existence_decision", pass,
        "decision says " + std::string(decision.exists ? "exists" : "not exists") +
            " but the enumerated set says otherwise");
  }
  add("proposal_count_bound",
      mopt.trace.proposal_count <= edges && jopt.trace.proposal_count <= edges,
      "proposal counts " + std::to_string(mopt.trace.proposal_count) + ", " +
          std::to_string(jopt.trace.proposal_count) + " vs " +
          std::to_string(edges) + " edges");
  {
    // Machine-proposing runs: each accepted offer strictly improves the
    // job's rank. Job-proposing runs: a job's offers walk down its list.
    bool pass = true;
    std::vector<int> best(instance.num_jobs(), std::numeric_limits<int>::max());
    for (const ProposalEvent& ev : mopt.trace.proposals) {
      if (!ev.accepted) continue;
      int rank = instance.edge(instance.find_edge(ev.target, ev.proposer)).job_rank;
      if (rank >= best[ev.target]) pass = false;
      best[ev.target] = rank;
    }
    std::vector<int> last(instance.num_jobs(), -1);
    for (const ProposalEvent& ev : jopt.trace.proposals) {
      int rank = instance.edge(instance.find_edge(ev.proposer, ev.target)).job_rank;
      if (rank <= last[ev.proposer]) pass = false;
      last[ev.proposer] = rank;
    }
    add("proposal_monotonicity", pass, "a proposal sequence went backwards");
  }
  add("augmentation_bound",
      rounded.augmentation_count <= 2 * (edges + instance.num_jobs()),
      std::to_string(rounded.augmentation_count) + " augmentations on " +
          std::to_string(edges + instance.num_jobs()) + " dummied edges");

  Instance dummied = with_dummy(instance);
  FractionalResult fractional = solve_fractional_stable(dummied);
  {
    StabilityReport feas = check_fractional_feasibility(dummied, fractional.allocation);
    std::vector<long long> jl = job_loads(dummied, fractional.allocation);
    bool full = true;
    for (int j = 0; j < dummied.num_jobs(); ++j) {
      full = full && jl[j] == dummied.job(j).size;
    }
    add("fractional_solver_stable",
        feas.feasible() && full &&
            fractional_blocking_edges(dummied, fractional.allocation).empty(),
        "fractional solver output is infeasible, partial, or blocked");
  }
  {
    std::vector<MachineStatus> status = classify_machines(dummied, fractional.allocation);
    bool pass = true;
    std::string detail;
    for (int m = 0; m < dummied.num_machines(); ++m) {
      if (status[m].popular && status[m].saturation != Saturation::saturated) {
        pass = false;
        detail = "machine '" + dummied.machine(m).id + "' is popular but not saturated";
      }
    }
    add("fractional_popular_saturated", pass, detail);
  }
  {
    bool pass = true;
    std::string detail;
    try {
      PointerState ps = compute_pointers(dummied, fractional.allocation);
      for (int m = 0; m < dummied.num_machines() && pass; ++m) {
        int e = ps.positive_proposal_edge[m];
        if (e < 0) continue;
        for (int other : dummied.machine(m).pref_edges) {
          if (fractional.allocation.amount(other) > 0 &&
              dummied.edge(other).machine_rank > dummied.edge(e).machine_rank) {
            pass = false;
            detail = "positive proposal edge '" + dummied.edge_key(e) +
                     "' is not machine '" + dummied.machine(m).id +
                     "''s worst positive edge";
            break;
          }
        }
      }
    } catch (const Error& err) {
      pass = false;
      detail = err.what();
    }
    add("fractional_unique_positive_proposal", pass, detail);
  }
  try {
    std::vector<Allocation> fractional_set = enumerate_fractional_stable(dummied, limit);
    std::vector<long long> expected = machine_loads(dummied, fractional.allocation);
    bool pass = !fractional_set.empty();
    std::string detail = "no fractional stable allocation enumerated";
    for (const Allocation& x : fractional_set) {
      if (machine_loads(dummied, x) != expected) {
        pass = false;
        detail = "machine load vectors differ across fractional stable allocations";
        break;
      }
    }
    add("fractional_rural_hospital", pass, detail);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::search_space_too_large) throw;
    report.notes.push_back(
        "fractional_rural_hospital skipped: " + std::string(err.what()));
  }

  // Machines empty in one stable solution and assigned in another; evidence
  // that per-machine loads are not invariant across the solution set.
  for (int m = 0; m < instance.num_machines(); ++m) {
    bool empty_somewhere = false;
    bool assigned_somewhere = false;
    for (const UnsplitAssignment& x : stable_set) {
      bool has = false;
      for (int j = 0; j < instance.num_jobs(); ++j) {
        has = has || x.machine_of[j] == m;
      }
      (has ? assigned_somewhere : empty_somewhere) = true;
    }
    if (empty_somewhere && assigned_somewhere) {
      report.notes.push_back("machine '" + instance.machine(m).id +
                             "' is empty in one stable solution and assigned "
                             "in another");
    }
  }

  return report;
}

RandomVerifySummary verify_random_instances(int count,
                                            unsigned long long master_seed,
                                            int max_jobs, int max_machines,
                                            long long max_size,
                                            long long max_capacity) {
  RandomVerifySummary summary;
  static constexpr double kDensities[] = {0.5, 0.75, 1.0};
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 derive(master_seed + static_cast<unsigned long long>(i));
    GenerateParams params;
    params.num_jobs = 1 + static_cast<int>(derive() % static_cast<unsigned>(max_jobs));
    params.num_machines =
        1 + static_cast<int>(derive() % static_cast<unsigned>(max_machines));
    params.max_size = max_size;
    params.max_capacity = max_capacity;
    params.density = kDensities[derive() % 3];
    params.seed = derive();
    ++summary.instances;
    try {
      Instance instance = generate_instance(params);
      TheoremReport report = verify_structure(instance);
      if (!report.all_pass()) {
        ++summary.failures;
        summary.failed_seeds.push_back(params.seed);
        if (summary.first_failure_detail.empty()) {
          for (const TheoremCheck& c : report.checks) {
            if (!c.pass) {
              summary.first_failure_detail =
                  "instance " + std::to_string(i) + ": " + c.name + ": " + c.detail;
              break;
            }
          }
        }
      }
    } catch (const Error& err) {
      ++summary.failures;
      summary.failed_seeds.push_back(params.seed);
      if (summary.first_failure_detail.empty()) {
        summary.first_failure_detail =
            "instance " + std::to_string(i) + ": error: " + err.what();
      }
    }
  }
  return summary;
}

}  // namespace stalloc
