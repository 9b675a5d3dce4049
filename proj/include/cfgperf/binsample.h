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

#ifndef CFGPERF_BINSAMPLE_H_
#define CFGPERF_BINSAMPLE_H_

#include <cstdint>

#include "cfgperf/sample_set.h"
#include "cfgperf/space.h"

namespace cfgperf {

// Sampling strategies over the binary sub-space. Only constraints whose atoms
// are all binary are honoured here; mixed constraints are applied when the
// learning set is assembled. Min/max-cardinality searches are exact over the
// enumerated valid binary rows, ties going to the earliest row in enumeration
// order.

// Option-wise: per option, a valid row enabling it with as few other options
// as possible.
SampleSet SampleOptionWise(const ConfigurationSpace& space);

// Negative option-wise: per option, a valid row disabling it with as many
// other options as possible, then the all-enabled row (or, if that is
// invalid, the valid row with the most enabled options).
SampleSet SampleNegativeOptionWise(const ConfigurationSpace& space);

// One row per satisfiable t-combination of options, enabling the tuple with
// as few other options as possible. Requires 2 <= t <= |binary options|.
SampleSet SampleTWise(const ConfigurationSpace& space, int t);

// Uniform draw without replacement from the valid binary rows; rows are
// returned in enumeration order.
SampleSet SampleRandomBinary(const ConfigurationSpace& space, std::size_t size,
                             std::uint64_t seed);

struct BinaryStrategySpec {
  enum class Kind { kOptionWise, kNegativeOptionWise, kTWise, kRandom };
  Kind kind = Kind::kOptionWise;
  int t = 2;
  std::size_t size = 0;
  std::uint64_t seed = 0;
};

SampleSet SampleBinary(const ConfigurationSpace& space, const BinaryStrategySpec& spec);

}  // namespace cfgperf

#endif  // CFGPERF_BINSAMPLE_H_
