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

#include "stalloc/cli.hpp"

#include <algorithm>

#include <CLI11.hpp>
#include <json.hpp>

#include "stalloc/checks.hpp"
#include "stalloc/fractional.hpp"
#include "stalloc/generate.hpp"
#include "stalloc/io.hpp"
#include "stalloc/oracle.hpp"
#include "stalloc/rounding.hpp"
#include "stalloc/solvers.hpp"

namespace stalloc::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json assignment_json(const Instance& instance,
                             const UnsplitAssignment& assignment) {
  ordered_json out = ordered_json::object();
  for (int j = 0; j < instance.num_jobs(); ++j) {
    int m = assignment.machine_of[j];
    if (m == UnsplitAssignment::kUnassigned || instance.is_dummy(m)) {
      out[instance.job(j).id] = nullptr;
    } else {
      out[instance.job(j).id] = instance.machine(m).id;
    }
  }
  return out;
}

ordered_json trace_json(const Instance& instance, const SolverTrace& trace,
                        bool machine_proposes) {
  ordered_json events = ordered_json::array();
  for (const ProposalEvent& ev : trace.proposals) {
    const std::string& proposer = machine_proposes
                                      ? instance.machine(ev.proposer).id
                                      : instance.job(ev.proposer).id;
    const std::string& target = machine_proposes ? instance.job(ev.target).id
                                                 : instance.machine(ev.target).id;
    events.push_back(
        {{"proposer", proposer}, {"target", target}, {"accepted", ev.accepted}});
  }
  return events;
}

ordered_json violations_json(const std::vector<Violation>& violations) {
  ordered_json out = ordered_json::array();
  for (const Violation& v : violations) {
    out.push_back({{"kind", v.kind}, {"entity", v.entity}, {"detail", v.detail}});
  }
  return out;
}

struct GlobalOptions {
  std::string input;
  std::string output;
  bool strict = false;
  bool trace = false;
};

void emit(const GlobalOptions& global, std::ostream& out, const ordered_json& doc) {
  std::string text = doc.dump(2) + "\n";
  if (global.output.empty()) {
    out << text;
  } else {
    write_file(global.output, text);
  }
}

Instance load_instance(const GlobalOptions& global) {
  if (global.input.empty()) {
    fail(ErrorKind::invalid_parameters, "no input file given; use -i/--input");
  }
  return parse_instance(read_file(global.input));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Solvers, checkers, and verification for unsplittable stable "
               "allocation instances"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("-i,--input", global.input, "Instance JSON file");
  app.add_option("-o,--output", global.output, "Write the result here instead of stdout");
  app.add_flag("--strict", global.strict,
               "Exit 1 on domain-negative results (no solution, unstable, failed checks)");
  app.add_flag("--trace", global.trace, "Include the proposal trace in solver output");

  CLI::App* solve = app.add_subcommand("solve", "Run a solver on an instance");
  std::string algorithm;
  std::string seed_allocation;
  solve->add_option("--algorithm", algorithm, "One of: jopt, mopt, fractional, round")
      ->required()
      ->check(CLI::IsMember({"jopt", "mopt", "fractional", "round"}));
  solve->add_option("--seed-allocation", seed_allocation,
                    "Stable fractional allocation file to round (round only)");

  CLI::App* decide =
      app.add_subcommand("decide", "Decide whether an unsplit stable assignment exists");

  CLI::App* check = app.add_subcommand("check", "Check feasibility and stability");
  std::string assignment_file;
  std::string mode = "relaxed";
  check->add_option("--assignment", assignment_file, "Assignment or allocation file")
      ->required();
  check->add_option("--mode", mode, "One of: fractional, relaxed")
      ->check(CLI::IsMember({"fractional", "relaxed"}));

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "List all relaxed unsplit stable assignments");
  long long limit = kDefaultEnumerationLimit;
  enumerate->add_option("--limit", limit, "Search space limit");

  CLI::App* verify =
      app.add_subcommand("verify", "Verify structural properties against brute force");
  int random_count = 0;
  unsigned long long verify_seed = 1;
  int verify_jobs = 6;
  int verify_machines = 4;
  long long verify_max_size = 3;
  long long verify_max_capacity = 3;
  verify->add_option("--random", random_count, "Verify this many random instances");
  verify->add_option("--seed", verify_seed, "Master seed for random verification");
  verify->add_option("--jobs", verify_jobs, "Maximum jobs per random instance");
  verify->add_option("--machines", verify_machines, "Maximum machines per random instance");
  verify->add_option("--max-size", verify_max_size, "Maximum job size");
  verify->add_option("--max-capacity", verify_max_capacity, "Maximum machine capacity");

  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  GenerateParams gen_params;
  gen_params.num_jobs = 4;
  gen_params.num_machines = 3;
  gen_params.max_size = 3;
  gen_params.max_capacity = 3;
  gen->add_option("--jobs", gen_params.num_jobs, "Number of jobs");
  gen->add_option("--machines", gen_params.num_machines, "Number of machines");
  gen->add_option("--max-size", gen_params.max_size, "Maximum job size");
  gen->add_option("--max-capacity", gen_params.max_capacity, "Maximum machine capacity");
  gen->add_option("--density", gen_params.density, "Edge probability in (0, 1]");
  gen->add_option("--seed", gen_params.seed, "PRNG seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      Instance instance = load_instance(global);
      ordered_json result = ordered_json::object();
      if (algorithm == "mopt" || algorithm == "jopt") {
        SolveResult solved = algorithm == "mopt" ? solve_machine_optimal(instance)
                                                 : solve_job_optimal(instance);
        result["assignment"] = assignment_json(instance, solved.assignment);
        result["size"] = total_size(instance, solved.assignment);
        result["congestion"] = total_congestion(instance, solved.assignment);
        result["counters"] = {{"proposal_count", solved.trace.proposal_count},
                              {"rejection_count", solved.trace.rejection_count}};
        if (global.trace) {
          result["trace"] = trace_json(instance, solved.trace, algorithm == "mopt");
        }
      } else if (algorithm == "fractional") {
        Instance dummied = with_dummy(instance);
        FractionalResult solved = solve_fractional_stable(dummied);
        ordered_json amounts = ordered_json::object();
        for (const auto& [key, value] : solved.allocation.to_amounts(dummied)) {
          amounts[key] = value;
        }
        result["amounts"] = std::move(amounts);
        result["size"] = total_size(dummied, solved.allocation);
        result["congestion"] = total_congestion(dummied, solved.allocation);
        result["counters"] = {{"offer_count", solved.offer_count}};
      } else {
        Instance dummied = with_dummy(instance);
        ordered_json counters = ordered_json::object();
        Allocation seed(dummied);
        if (seed_allocation.empty()) {
          FractionalResult fractional = solve_fractional_stable(dummied);
          seed = fractional.allocation;
          counters["offer_count"] = fractional.offer_count;
        } else {
          seed = complete_with_dummy(
              dummied, parse_allocation(read_file(seed_allocation), dummied));
        }
        RoundResult rounded = round_to_unsplit(dummied, seed);
        counters["augmentation_count"] = rounded.augmentation_count;
        result["assignment"] = assignment_json(instance, rounded.assignment);
        result["size"] = total_size(dummied, rounded.assignment);
        result["congestion"] = total_congestion(dummied, rounded.assignment);
        result["counters"] = std::move(counters);
      }
      emit(global, out, result);
      return 0;
    }

    if (decide->parsed()) {
      Instance instance = load_instance(global);
      ExistenceResult decision = decide_unsplit_existence(instance);
      ordered_json result = ordered_json::object();
      result["exists"] = decision.exists;
      result["min_congestion"] = decision.min_congestion;
      if (decision.exists) {
        result["assignment"] = assignment_json(instance, decision.machine_optimal);
      }
      emit(global, out, result);
      return !decision.exists && global.strict ? 1 : 0;
    }

    if (check->parsed()) {
      Instance instance = load_instance(global);
      std::string text = read_file(assignment_file);
      ordered_json result = ordered_json::object();
      result["mode"] = mode;
      StabilityReport report;
      std::vector<int> blocking;
      if (mode == "relaxed") {
        UnsplitAssignment assignment = parse_assignment(text, instance);
        report = check_relaxed_unsplit_feasibility(instance, assignment);
        if (report.feasible()) blocking = relaxed_blocking_edges(instance, assignment);
      } else {
        Allocation allocation = parse_allocation(text, instance);
        report = check_fractional_feasibility(instance, allocation);
        if (report.feasible()) blocking = fractional_blocking_edges(instance, allocation);
      }
      result["feasible"] = report.feasible();
      result["violations"] = violations_json(report.feasibility_violations);
      ordered_json blockers = ordered_json::array();
      for (int e : blocking) blockers.push_back(instance.edge_key(e));
      result["blocking_edges"] = std::move(blockers);
      bool stable = report.feasible() && blocking.empty();
      result["stable"] = stable;
      emit(global, out, result);
      return !stable && global.strict ? 1 : 0;
    }

    if (enumerate->parsed()) {
      Instance instance = load_instance(global);
      std::vector<UnsplitAssignment> solutions = enumerate_relaxed_stable(instance, limit);
      ordered_json result = ordered_json::object();
      result["count"] = solutions.size();
      result["solutions"] = ordered_json::array();
      for (const UnsplitAssignment& x : solutions) {
        result["solutions"].push_back({{"assignment", assignment_json(instance, x)},
                                       {"size", total_size(instance, x)},
                                       {"congestion", total_congestion(instance, x)}});
      }
      emit(global, out, result);
      return 0;
    }

    if (verify->parsed()) {
      ordered_json result = ordered_json::object();
      bool ok = false;
      if (random_count > 0) {
        RandomVerifySummary summary = verify_random_instances(
            random_count, verify_seed, verify_jobs, verify_machines,
            verify_max_size, verify_max_capacity);
        ok = summary.failures == 0;
        result["instances"] = summary.instances;
        result["failures"] = summary.failures;
        result["failed_seeds"] = summary.failed_seeds;
        if (!ok) result["first_failure"] = summary.first_failure_detail;
      } else {
        Instance instance = load_instance(global);
        TheoremReport report = verify_structure(instance);
        ok = report.all_pass();
        result["all_pass"] = ok;
        result["checks"] = ordered_json::array();
        for (const TheoremCheck& c : report.checks) {
          ordered_json entry = {{"name", c.name}, {"pass", c.pass}};
          if (!c.pass) entry["detail"] = c.detail;
          result["checks"].push_back(std::move(entry));
        }
        result["notes"] = report.notes;
      }
      emit(global, out, result);
      return !ok && global.strict ? 1 : 0;
    }

    if (gen->parsed()) {
      Instance instance = generate_instance(gen_params);
      std::string text = serialize_instance(instance);
      if (global.output.empty()) {
        out << text;
      } else {
        write_file(global.output, text);
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace stalloc::cli
