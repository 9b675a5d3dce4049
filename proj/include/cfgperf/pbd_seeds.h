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

#ifndef CFGPERF_PBD_SEEDS_H_
#define CFGPERF_PBD_SEEDS_H_

#include <string>
#include <vector>

namespace cfgperf {

// Generator row of a Plackett-Burman design. The design's row i is `vector`
// cyclically shifted right by i positions.
struct PbdSeed {
  std::size_t configs = 0;
  std::size_t levels = 0;
  std::vector<int> vector;

  std::string id() const;  // "<configs>x<levels>"
};

// Seeds (9,3), (25,5), (49,7) and (125,5), identical to data/pbd_seeds.json.
const std::vector<PbdSeed>& BuiltinPbdSeeds();

// Reads a JSON list of {"id": "9x3", "levels": 3, "vector": [...]}; validates
// lengths, level range and balance. Throws Error(kInvalidData / kIo).
std::vector<PbdSeed> ParsePbdSeeds(const std::string& json_text);
std::vector<PbdSeed> LoadPbdSeeds(const std::string& path);

// Finds a seed by id ("9x3") in `seeds`. Throws Error(kInvalidArgument).
const PbdSeed& FindPbdSeed(const std::vector<PbdSeed>& seeds, const std::string& id);

}  // namespace cfgperf

#endif  // CFGPERF_PBD_SEEDS_H_
