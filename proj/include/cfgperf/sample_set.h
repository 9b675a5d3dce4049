// Copyright 2026 The cfgperf Authors
//
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

#ifndef CFGPERF_SAMPLE_SET_H_
#define CFGPERF_SAMPLE_SET_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfgperf/space.h"
#include "json.hpp"

namespace cfgperf {

struct Provenance {
  std::string strategy;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  // nullopt when the strategy determines the size.
  std::optional<std::size_t> requested_size;
};

// Ordered, duplicate-free rows of one sub-space. Warnings collect skipped
// options or tuples (dead/mandatory options, unsatisfiable tuples, design
// points removed by constraints).
struct SampleSet {
  SubSpace scope = SubSpace::kFull;
  std::vector<std::vector<double>> rows;
  Provenance provenance;
  std::vector<std::string> warnings;

  std::size_t size() const { return rows.size(); }
};

// Removes later duplicates, keeping first occurrences in order.
void Deduplicate(std::vector<std::vector<double>>& rows);

// CSV of the scope's option columns in declared order.
void WriteSampleCsv(std::ostream& out, const SampleSet& sample,
                    const ConfigurationSpace& space);
nlohmann::json ProvenanceJson(const SampleSet& sample);

}  // namespace cfgperf

#endif  // CFGPERF_SAMPLE_SET_H_
