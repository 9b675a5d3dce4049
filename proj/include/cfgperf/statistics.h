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

#ifndef CFGPERF_STATISTICS_H_
#define CFGPERF_STATISTICS_H_

#include <span>
#include <string>
#include <vector>

namespace cfgperf {

struct WilcoxonResult {
  double p_value = 1.0;
  double w_plus = 0.0;    // rank sum of positive differences a - b
  std::size_t n = 0;      // non-zero differences
  bool exact = true;
  std::string warning;
};

inline constexpr std::size_t kWilcoxonExactLimit = 25;

// One-sided signed-rank test of H1: a is stochastically smaller than b, i.e.
// p = P(W+ <= observed) under random signs. Zero differences are dropped and
// tied |differences| get average ranks. Up to 25 pairs the exact null
// distribution is used, above that the normal approximation with tie and
// continuity correction. Throws Error(kInvalidArgument) on unequal lengths.
WilcoxonResult WilcoxonOneSided(std::span<const double> a, std::span<const double> b);

// Standard normal CDF.
double NormalCdf(double z);

enum class EffectMagnitude { kNegligible, kSmall, kMedium, kLarge };
std::string MagnitudeName(EffectMagnitude m);

struct CliffsDelta {
  double delta = 0.0;  // (#{x > y} - #{x < y}) / (|a| |b|)
  EffectMagnitude magnitude = EffectMagnitude::kNegligible;
};

// |delta| < 0.147 negligible, < 0.33 small, < 0.474 medium, else large.
EffectMagnitude ClassifyDelta(double delta);
CliffsDelta ComputeCliffsDelta(std::span<const double> a, std::span<const double> b);

struct ParetoPoint {
  std::string id;
  double relative_size = 0.0;
  double mean_error = 0.0;
};

// Non-dominated points when minimizing both coordinates, sorted by
// ascending error (ties: size, then id).
std::vector<ParetoPoint> ParetoFront(const std::vector<ParetoPoint>& points);

// Pairwise comparison of named paired samples. p_value[i][j] tests "row i
// is smaller than column j"; the diagonal is unused.
struct StatsComparison {
  std::vector<std::string> names;
  std::vector<std::vector<double>> p_value;
  std::vector<std::vector<CliffsDelta>> delta;
};

StatsComparison CompareGroups(const std::vector<std::string>& names,
                              const std::vector<std::vector<double>>& samples);

}  // namespace cfgperf

#endif  // CFGPERF_STATISTICS_H_
