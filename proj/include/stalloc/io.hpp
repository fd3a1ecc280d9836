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

#include <map>
#include <string>

#include "stalloc/allocation.hpp"
#include "stalloc/instance.hpp"

namespace stalloc {

// Instance JSON schema:
//   {
//     "comment": "...",                                     (optional)
//     "jobs": [{"id": str, "size": int, "prefs": [str]}],
//     "machines": [{"id": str, "capacity": int, "prefs": [str]}],
//     "edge_capacities": {"<job>:<machine>": int}           (optional)
//   }

/// Parses and validates instance text. Errors: syntax_error (with line and
/// column for malformed JSON, or a description for schema mismatches) plus
/// every validate_instance error.
Instance parse_instance(const std::string& text);

RawInstance parse_raw_instance(const std::string& text);

/// Canonical serialization: fixed field order, declaration order inside
/// arrays, edge-capacity keys sorted, two-space indent, trailing newline.
/// parse and serialize round-trip byte-identically on canonical input.
std::string serialize_instance(const Instance& instance);

/// Reads {"assignment": {"<job>": "<machine>"|null, ...}}; a bare assignment
/// object is also accepted. Errors: syntax_error, unknown_job,
/// unknown_machine.
UnsplitAssignment parse_assignment(const std::string& text,
                                   const Instance& instance);

/// Reads {"amounts": {"<job>:<machine>": int, ...}} (or a bare amounts
/// object) against the given instance. Errors: syntax_error, unknown_edge.
Allocation parse_allocation(const std::string& text, const Instance& instance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace stalloc
