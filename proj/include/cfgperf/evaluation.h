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

#ifndef CFGPERF_EVALUATION_H_
#define CFGPERF_EVALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfgperf/measurement.h"
#include "cfgperf/predictor.h"

namespace cfgperf {

// mean_c |measured(c) - predicted(c)| / measured(c). Throws
// Error(kInvalidData) on non-positive measurements or mismatched lengths.
double MeanRelativeError(std::span<const double> measured,
                         std::span<const double> predicted);

// Mean relative error of `predictor` over every row of `table`. Rows listed
// in `exclude` (e.g. the learning set) are skipped when given.
double MeanError(const Predictor& predictor, const MeasurementTable& table,
                 const std::vector<Configuration>* exclude = nullptr);

// (max - min) / min of the measured values.
double PerformanceVariation(const MeasurementTable& table);

// max - min; 0 for a single value. Throws on an empty input.
double StabilityRange(std::span<const double> errors);

// One learner x binary strategy x numeric strategy result on one system.
// Random strategies are averaged over seeds; `seed_errors` keeps the
// individual runs.
struct ExperimentCell {
  std::string system;
  std::string learner;
  std::string binary;
  std::string numeric;
  std::size_t learning_set_size = 0;  // |L| (first seed for averaged cells)
  std::size_t product_size = 0;       // |L_Bin| x |L_Num| before filtering
  double relative_size = 0.0;         // |L| / |C|
  double mean_error = 0.0;
  std::vector<double> seed_errors;
  std::string hyperparams;  // tuned values (first seed), compact JSON
  std::string failure;      // empty when every run succeeded

  std::string Key() const { return learner + "|" + binary + "|" + numeric; }
};

// Answers to the research-question predicates over a cell grid. Missing or
// failed cells count as +inf, so they never win a strict comparison.
struct RqAnswer {
  bool holds = false;
  std::string witness;  // the learner / strategy / combination, if any
};

struct RqReport {
  RqAnswer rq11;          // one learner beats all others in every (b, n, s)
  RqAnswer rq12;          // one learner has the smallest error range per s
  RqAnswer rq21_binary;   // one binary strategy beats all others everywhere
  RqAnswer rq21_numeric;
  RqAnswer rq22_binary;   // one binary strategy has the smallest range per s
  RqAnswer rq22_numeric;
  RqAnswer rq31;          // one combination beats every other per s
};

RqReport EvaluateResearchQuestions(const std::vector<ExperimentCell>& cells);

// Error ranges (max - min over the other two dimensions) per system.
// dimension: "learner", "binary" or "numeric". Result rows:
// (system, value, range).
struct RangeEntry {
  std::string system;
  std::string value;
  double range = 0.0;
};
std::vector<RangeEntry> StabilityRanges(const std::vector<ExperimentCell>& cells,
                                        const std::string& dimension);

}  // namespace cfgperf

#endif  // CFGPERF_EVALUATION_H_
