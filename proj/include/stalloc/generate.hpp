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

#include "stalloc/instance.hpp"

namespace stalloc {

struct GenerateParams {
  int num_jobs = 0;
  int num_machines = 0;
  long long max_size = 1;      // sizes drawn uniformly from [1, max_size]
  long long max_capacity = 1;  // capacities drawn uniformly from [1, max_capacity]
  double density = 1.0;        // per-pair edge probability, in (0, 1]
  unsigned long long seed = 0;
};

/// Seeded random instance: each job-machine pair becomes an edge with the
/// given probability, and both sides rank their partners by uniform random
/// permutation. Identical parameters produce identical instances, on any
/// platform. Errors: invalid_parameters.
Instance generate_instance(const GenerateParams& params);

}  // namespace stalloc
