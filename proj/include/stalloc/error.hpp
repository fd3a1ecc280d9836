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

#include <stdexcept>
#include <string>

namespace stalloc {

enum class ErrorKind {
  duplicate_identifier,
  asymmetric_preference,
  non_positive_size,
  edge_capacity_on_missing_edge,
  invalid_identifier,
  unknown_edge,
  unknown_machine,
  unknown_job,
  assigned_to_unlisted_machine,
  infeasible_input,
  invalid_instance,
  dummy_already_present,
  not_fully_allocated,
  unstable_input,
  inconsistent_pointers,
  zero_epsilon,
  search_space_too_large,
  invalid_parameters,
  syntax_error,
};

const char* to_string(ErrorKind kind);

/// Domain error carrying a machine-readable kind next to the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace stalloc
