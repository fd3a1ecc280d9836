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

#include "stalloc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stalloc {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::syntax_error, e.what());
  }
}

[[noreturn]] void schema_error(const std::string& message) {
  fail(ErrorKind::syntax_error, "schema error: " + message);
}

const ordered_json& expect(const ordered_json& obj, const char* key,
                           const char* context) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    schema_error(std::string(context) + " is missing required field '" + key + "'");
  }
  return *it;
}

std::string expect_string(const ordered_json& value, const char* what) {
  if (!value.is_string()) schema_error(std::string(what) + " must be a string");
  return value.get<std::string>();
}

long long expect_integer(const ordered_json& value, const char* what) {
  if (!value.is_number_integer()) {
    schema_error(std::string(what) + " must be an integer");
  }
  return value.get<long long>();
}

std::vector<std::string> expect_string_array(const ordered_json& value,
                                             const char* what) {
  if (!value.is_array()) schema_error(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : value) out.push_back(expect_string(item, what));
  return out;
}

void reject_unknown_keys(const ordered_json& obj,
                         std::initializer_list<const char*> allowed,
                         const char* context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) {
      schema_error(std::string(context) + " has unknown field '" + it.key() + "'");
    }
  }
}

}  // namespace

RawInstance parse_raw_instance(const std::string& text) {
  ordered_json doc = parse_json(text);
  if (!doc.is_object()) schema_error("instance must be a JSON object");
  reject_unknown_keys(doc, {"comment", "jobs", "machines", "edge_capacities"},
                      "instance");

  RawInstance raw;
  if (doc.contains("comment")) {
    raw.comment = expect_string(doc["comment"], "comment");
  }
  const ordered_json& jobs = expect(doc, "jobs", "instance");
  if (!jobs.is_array()) schema_error("'jobs' must be an array");
  for (const auto& job : jobs) {
    if (!job.is_object()) schema_error("job entry must be an object");
    reject_unknown_keys(job, {"id", "size", "prefs"}, "job entry");
    RawJob rj;
    rj.id = expect_string(expect(job, "id", "job entry"), "job id");
    rj.size = expect_integer(expect(job, "size", "job entry"), "job size");
    rj.prefs = expect_string_array(expect(job, "prefs", "job entry"), "job prefs");
    raw.jobs.push_back(std::move(rj));
  }
  const ordered_json& machines = expect(doc, "machines", "instance");
  if (!machines.is_array()) schema_error("'machines' must be an array");
  for (const auto& machine : machines) {
    if (!machine.is_object()) schema_error("machine entry must be an object");
    reject_unknown_keys(machine, {"id", "capacity", "prefs"}, "machine entry");
    RawMachine rm;
    rm.id = expect_string(expect(machine, "id", "machine entry"), "machine id");
    rm.capacity =
        expect_integer(expect(machine, "capacity", "machine entry"), "capacity");
    rm.prefs = expect_string_array(expect(machine, "prefs", "machine entry"),
                                   "machine prefs");
    raw.machines.push_back(std::move(rm));
  }
  if (doc.contains("edge_capacities")) {
    const ordered_json& caps = doc["edge_capacities"];
    if (!caps.is_object()) schema_error("'edge_capacities' must be an object");
    for (auto it = caps.begin(); it != caps.end(); ++it) {
      raw.edge_capacities[it.key()] = expect_integer(it.value(), "edge capacity");
    }
  }
  return raw;
}

Instance parse_instance(const std::string& text) {
  return validate_instance(parse_raw_instance(text));
}

std::string serialize_instance(const Instance& instance) {
  RawInstance raw = instance.to_raw();
  ordered_json doc = ordered_json::object();
  if (!raw.comment.empty()) doc["comment"] = raw.comment;
  doc["jobs"] = ordered_json::array();
  for (const RawJob& job : raw.jobs) {
    doc["jobs"].push_back(
        {{"id", job.id}, {"size", job.size}, {"prefs", job.prefs}});
  }
  doc["machines"] = ordered_json::array();
  for (const RawMachine& machine : raw.machines) {
    doc["machines"].push_back({{"id", machine.id},
                               {"capacity", machine.capacity},
                               {"prefs", machine.prefs}});
  }
  if (!raw.edge_capacities.empty()) {
    ordered_json caps = ordered_json::object();
    for (const auto& [key, value] : raw.edge_capacities) caps[key] = value;
    doc["edge_capacities"] = std::move(caps);
  }
  return doc.dump(2) + "\n";
}

UnsplitAssignment parse_assignment(const std::string& text,
                                   const Instance& instance) {
  ordered_json doc = parse_json(text);
  if (doc.is_object() && doc.contains("assignment")) doc = doc["assignment"];
  if (!doc.is_object()) {
    schema_error("assignment must be an object mapping job ids to machine ids");
  }
  UnsplitAssignment out = UnsplitAssignment::empty(instance);
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    int j = instance.job_index(it.key());
    if (j < 0) {
      fail(ErrorKind::unknown_job, "assignment names unknown job '" + it.key() + "'");
    }
    if (it.value().is_null()) continue;
    std::string mid = expect_string(it.value(), "assigned machine");
    int m = instance.machine_index(mid);
    if (m < 0) {
      fail(ErrorKind::unknown_machine,
           "assignment names unknown machine '" + mid + "'");
    }
    out.machine_of[j] = instance.is_dummy(m) ? UnsplitAssignment::kUnassigned : m;
  }
  return out;
}

Allocation parse_allocation(const std::string& text, const Instance& instance) {
  ordered_json doc = parse_json(text);
  if (doc.is_object() && doc.contains("amounts")) doc = doc["amounts"];
  if (!doc.is_object()) {
    schema_error("allocation must be an object mapping '<job>:<machine>' to amounts");
  }
  std::map<std::string, long long> amounts;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    amounts[it.key()] = expect_integer(it.value(), "allocation amount");
  }
  return Allocation::from_amounts(instance, amounts);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::syntax_error, "cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::syntax_error, "cannot open file '" + path + "' for writing");
  out << contents;
}

}  // namespace stalloc
