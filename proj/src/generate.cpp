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

#include "stalloc/generate.hpp"

#include <random>

namespace stalloc {

namespace {

// std::uniform_int_distribution is implementation-defined; these keep
// generated instances identical across standard libraries.
long long draw_below(std::mt19937_64& rng, long long bound) {
  return static_cast<long long>(rng() % static_cast<unsigned long long>(bound));
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle_list(std::mt19937_64& rng, std::vector<T>& items) {
  for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
    std::swap(items[i], items[draw_below(rng, i + 1)]);
  }
}

}  // namespace

Instance generate_instance(const GenerateParams& params) {
  if (params.num_jobs < 1 || params.num_machines < 1) {
    fail(ErrorKind::invalid_parameters, "job and machine counts must be positive");
  }
  if (params.max_size < 1 || params.max_capacity < 1) {
    fail(ErrorKind::invalid_parameters, "max size and max capacity must be >= 1");
  }
  if (!(params.density > 0.0) || params.density > 1.0) {
    fail(ErrorKind::invalid_parameters, "density must lie in (0, 1]");
  }

  std::mt19937_64 rng(params.seed);
  RawInstance raw;
  raw.jobs.resize(params.num_jobs);
  raw.machines.resize(params.num_machines);
  for (int j = 0; j < params.num_jobs; ++j) {
    raw.jobs[j].id = "j" + std::to_string(j + 1);
    raw.jobs[j].size = 1 + draw_below(rng, params.max_size);
  }
  for (int m = 0; m < params.num_machines; ++m) {
    raw.machines[m].id = "m" + std::to_string(m + 1);
    raw.machines[m].capacity = 1 + draw_below(rng, params.max_capacity);
  }
  std::vector<std::vector<int>> partners(params.num_jobs);
  for (int j = 0; j < params.num_jobs; ++j) {
    for (int m = 0; m < params.num_machines; ++m) {
      if (params.density >= 1.0 || draw_unit(rng) < params.density) {
        partners[j].push_back(m);
        raw.machines[m].prefs.push_back(raw.jobs[j].id);
      }
    }
  }
  for (int j = 0; j < params.num_jobs; ++j) {
    shuffle_list(rng, partners[j]);
    for (int m : partners[j]) raw.jobs[j].prefs.push_back(raw.machines[m].id);
  }
  for (int m = 0; m < params.num_machines; ++m) {
    shuffle_list(rng, raw.machines[m].prefs);
  }
  return validate_instance(raw);
}

}  // namespace stalloc
