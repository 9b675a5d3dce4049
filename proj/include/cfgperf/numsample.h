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

#ifndef CFGPERF_NUMSAMPLE_H_
#define CFGPERF_NUMSAMPLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfgperf/d_optimal.h"
#include "cfgperf/pbd_seeds.h"
#include "cfgperf/sample_set.h"
#include "cfgperf/space.h"

namespace cfgperf {

// Designs over the numeric sub-space. Points are laid out in the unit cube
// [0,1]^k and mapped back onto each option's domain, snapping to the nearest
// member (ties toward the smaller value). Snapped points that coincide are
// merged and points violating numeric-only constraints are dropped with a
// warning.

// (value - min) / (max - min)
double Normalize(const NumericOption& option, double value);
// Inverse of Normalize, snapped to the nearest domain member.
double Denormalize(const NumericOption& option, double unit);
double SnapToDomain(const NumericOption& option, double value);

// Center point, then for each option the `levels` equidistant positions
// except the one closest to the center (ties: the lower one is dropped).
SampleSet SampleOneFactorAtATime(const ConfigurationSpace& space, int levels);

// For every option pair the four (min, max) corners with the rest at the
// center, then the center point. Needs at least 3 numeric options.
SampleSet SampleBoxBehnken(const ConfigurationSpace& space);

// Central composite inscribed: the 2^k corners at 0.5 +- alpha/2, the 2k
// axial points at 0 and 1 on one axis with the rest at the center, and the
// center point. 0 < alpha < 1.
inline constexpr double kDefaultCciAlpha = 0.5;
inline constexpr std::size_t kMaxCciOptions = 20;
SampleSet SampleCentralComposite(const ConfigurationSpace& space,
                                 double alpha = kDefaultCciAlpha);

// Row i is the seed shifted right by i, truncated to the numeric options;
// level L maps to L / (levels - 1) in the unit interval.
SampleSet SamplePlackettBurman(const ConfigurationSpace& space, const PbdSeed& seed);

enum class ModelTerms { kLinear, kQuadratic, kFullQuadratic };
ModelTerms ParseModelTerms(const std::string& name);
std::string ModelTermsName(ModelTerms terms);

// Model matrix over rows of unit-cube coordinates, coded to [-1, 1]:
// intercept, main effects, then squares (kQuadratic) and, for
// kFullQuadratic, pairwise products.
Eigen::MatrixXd BuildModelMatrix(const std::vector<std::vector<double>>& unit_rows,
                                 ModelTerms terms);
std::size_t ModelColumns(std::size_t num_options, ModelTerms terms);

inline constexpr std::size_t kDefaultDOptimalCandidateCap = 20000;

struct DOptimalSpec {
  std::size_t size = 50;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  ModelTerms terms = ModelTerms::kQuadratic;
  // Above this many valid numeric rows a seeded random subset is used.
  std::size_t candidate_cap = kDefaultDOptimalCandidateCap;
};

// D-optimal subset of the valid numeric rows, returned in enumeration order.
SampleSet SampleDOptimal(const ConfigurationSpace& space, const DOptimalSpec& spec);

// Uniform draw without replacement from the valid numeric rows; rows are
// returned in enumeration order.
SampleSet SampleRandomNumeric(const ConfigurationSpace& space, std::size_t size,
                              std::uint64_t seed);

struct NumericStrategySpec {
  enum class Kind { kOfat, kBoxBehnken, kCentralComposite, kPlackettBurman,
                    kDOptimal, kRandom };
  Kind kind = Kind::kOfat;
  int levels = 5;                    // OFAT
  double alpha = kDefaultCciAlpha;   // CCI
  std::string pbd_seed = "9x3";      // PBD
  std::size_t size = 50;             // DOD, RN
  std::size_t restarts = 5;          // DOD
  ModelTerms terms = ModelTerms::kQuadratic;
  std::uint64_t seed = 0;            // DOD, RN
};

// `seeds` defaults to the built-in table.
SampleSet SampleNumeric(const ConfigurationSpace& space, const NumericStrategySpec& spec,
                        const std::vector<PbdSeed>* seeds = nullptr);

}  // namespace cfgperf

#endif  // CFGPERF_NUMSAMPLE_H_
