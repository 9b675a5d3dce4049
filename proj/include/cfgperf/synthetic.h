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

#ifndef CFGPERF_SYNTHETIC_H_
#define CFGPERF_SYNTHETIC_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfgperf/learners.h"
#include "cfgperf/measurement.h"
#include "cfgperf/space.h"
#include "json.hpp"

namespace cfgperf {

// Recipe for a ground-truth system. The term model has the shape
//   intercept + sum_k c_k * prod(option^power)
// with seeded structure and coefficients. Numeric factors are rescaled by
// their domain maximum so every term contributes at most |c_k|.
struct SyntheticSystemSpec {
  nlohmann::json space;  // variability-model document
  std::size_t binary_main_effects = 0;
  std::size_t numeric_main_effects = 0;
  std::size_t pairwise_interactions = 0;
  std::size_t higher_order_interactions = 0;
  std::size_t higher_order_size = 3;  // options per higher-order term
  int min_degree = 1;                 // numeric powers drawn from [min, cap]
  int degree_cap = 2;                 // <= 4
  // "all": interactions draw from every option; "binary": binary only.
  std::string interaction_pool = "all";
  double coefficient_min = 1.0;
  double coefficient_max = 10.0;
  double negative_fraction = 0.0;  // probability of a negative coefficient
  double intercept = 0.0;          // 0: drawn, scaled to the number of terms
  double noise = 0.0;              // multiplicative, value * (1 + noise * g)
  std::uint64_t seed = 0;

  static SyntheticSystemSpec FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
};

struct GroundTruthModel {
  std::vector<std::string> option_names;
  std::vector<MrTerm> terms;  // terms[0] is the intercept
  std::vector<double> coefficients;

  double Evaluate(std::span<const double> values) const;
  std::string Formula() const;
  nlohmann::json ToJson() const;
};

struct SyntheticSystem {
  ConfigurationSpace space;
  GroundTruthModel model;
  MeasurementTable table;
};

// Throws Error(kInvalidArgument) for an impossible recipe and
// Error(kNumerical) when 100 coefficient draws all give a non-positive value
// somewhere on the valid configurations.
SyntheticSystem GenerateSyntheticSystem(const SyntheticSystemSpec& spec);

// Variability-model document of an unconstrained grid: binary options
// b1..bB and numeric options n1..nN each with values 1..levels.
nlohmann::json GridSpaceJson(const std::string& name, std::size_t binary,
                             std::size_t numeric, std::size_t levels);

}  // namespace cfgperf

#endif  // CFGPERF_SYNTHETIC_H_
