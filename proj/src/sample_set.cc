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

#include "cfgperf/sample_set.h"

#include <ostream>
#include <unordered_set>

#include "cfgperf/format.h"

namespace cfgperf {

void Deduplicate(std::vector<std::vector<double>>& rows) {
  std::unordered_set<Configuration, ConfigurationHash> seen;
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (auto& r : rows) {
    if (seen.insert(Configuration{r}).second) out.push_back(std::move(r));
  }
  rows = std::move(out);
}

void WriteSampleCsv(std::ostream& out, const SampleSet& sample,
                    const ConfigurationSpace& space) {
  const std::size_t offset =
      sample.scope == SubSpace::kNumeric ? space.num_binary() : 0;
  const std::size_t width = space.Width(sample.scope);
  for (std::size_t k = 0; k < width; ++k) {
    out << (k ? "," : "") << CsvField(space.option_name(k + offset));
  }
  out << '\n';
  for (const auto& row : sample.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out << (k ? "," : "") << FormatDouble(row[k]);
    }
    out << '\n';
  }
}

nlohmann::json ProvenanceJson(const SampleSet& sample) {
  nlohmann::json j;
  j["strategy"] = sample.provenance.strategy;
  j["parameters"] = sample.provenance.parameters;
  j["seed"] = sample.provenance.seed;
  if (sample.provenance.requested_size) {
    j["requested_size"] = *sample.provenance.requested_size;
  } else {
    j["requested_size"] = "strategy-determined";
  }
  j["scope"] = sample.scope == SubSpace::kBinary    ? "binary"
               : sample.scope == SubSpace::kNumeric ? "numeric"
                                                    : "full";
  j["size"] = sample.rows.size();
  j["warnings"] = sample.warnings;
  return j;
}

}  // namespace cfgperf
