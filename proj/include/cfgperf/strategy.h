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

#ifndef CFGPERF_STRATEGY_H_
#define CFGPERF_STRATEGY_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cfgperf/binsample.h"
#include "cfgperf/numsample.h"
#include "cfgperf/pbd_seeds.h"
#include "cfgperf/sample_set.h"

namespace cfgperf {

// Strategy names as used in experiment plans:
//   binary:  OW, NegOW, T2, T3, ... (any t >= 2), RB(_,OW), RB(_,T2), RB(n)
//   numeric: OFAT, BBD, CCI, PBD(9,3), PBD(25,5), ..., DOD(n), RN(n)
// RB(_,X) draws as many random rows as strategy X selects on the same space.
struct BinaryStrategy {
  std::string name;
  BinaryStrategySpec spec;
  // For RB(_,X): the base strategy whose size is matched.
  std::optional<BinaryStrategySpec> size_from;

  bool random() const { return spec.kind == BinaryStrategySpec::Kind::kRandom; }
};

struct NumericStrategy {
  std::string name;
  NumericStrategySpec spec;

  bool random() const { return spec.kind == NumericStrategySpec::Kind::kRandom; }
};

// Throws Error(kInvalidArgument) on an unknown or malformed name.
BinaryStrategy ParseBinaryStrategy(std::string_view name);
NumericStrategy ParseNumericStrategy(std::string_view name);

// Settings shared by every numeric strategy of a plan.
struct NumericSettings {
  int ofat_levels = 5;
  double cci_alpha = kDefaultCciAlpha;
  std::size_t dod_restarts = 5;
  ModelTerms dod_terms = ModelTerms::kQuadratic;
  const std::vector<PbdSeed>* pbd_seeds = nullptr;  // builtin when null
};

// Draws the sample. `seed` feeds random strategies (and the D-optimal
// restarts). A space without options of the scope yields one empty row.
SampleSet DrawBinary(const ConfigurationSpace& space, const BinaryStrategy& strategy,
                     std::uint64_t seed);
SampleSet DrawNumeric(const ConfigurationSpace& space, const NumericStrategy& strategy,
                      std::uint64_t seed, const NumericSettings& settings = {});

}  // namespace cfgperf

#endif  // CFGPERF_STRATEGY_H_
