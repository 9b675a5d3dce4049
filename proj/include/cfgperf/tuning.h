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

#ifndef CFGPERF_TUNING_H_
#define CFGPERF_TUNING_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cfgperf/encoding.h"
#include "cfgperf/hyperparams.h"
#include "cfgperf/rng.h"
#include "cfgperf/space.h"
#include "json.hpp"

namespace cfgperf {

// Sampling domain of one hyper-parameter.
//   {"choice": [v, ...]}
//   {"int": [lo, hi]}          inclusive, uniform
//   {"log_uniform": [lo, hi]}  0 < lo <= hi
//   {"uniform": [lo, hi]}
struct ParamDomain {
  enum class Kind { kChoice, kInt, kLogUniform, kUniform };
  Kind kind = Kind::kChoice;
  std::vector<nlohmann::json> choices;
  double lo = 0.0;
  double hi = 0.0;

  nlohmann::json Draw(Rng& rng) const;
  bool Contains(const nlohmann::json& value) const;
  nlohmann::json ToJson() const;
  static ParamDomain FromJson(const nlohmann::json& j);
};

// Per-learner domains covering every hyper-parameter key, in a fixed order.
class HyperParamSpace {
 public:
  using Domains = std::vector<std::pair<std::string, ParamDomain>>;

  // The same ranges as data/hyperparams.json.
  static HyperParamSpace Default();
  // {"SVR": {"C": {...}, ...}, ...}; learners and keys missing from the
  // document keep their default domains. Throws Error(kInvalidData) on unknown keys, domains
  // not covering the default value, or malformed entries.
  static HyperParamSpace FromJson(const nlohmann::json& j);
  static HyperParamSpace Load(const std::string& path);

  const Domains& For(LearnerId learner) const;
  HyperParams Draw(LearnerId learner, Rng& rng) const;
  nlohmann::json ToJson() const;

 private:
  std::vector<Domains> domains_;  // indexed by LearnerId
};

struct TuningOptions {
  std::size_t folds = 5;
  std::size_t budget = 100;
  std::uint64_t seed = 0;
};

struct TrialResult {
  std::size_t trial = 0;
  HyperParams hp{LearnerId::kMR, nlohmann::json::object()};
  double cv_error = 0.0;  // mean of fold_errors, +inf on failure
  std::vector<double> fold_errors;
  std::string failure;
};

struct TuningResult {
  HyperParams best{LearnerId::kMR, nlohmann::json::object()};
  std::size_t best_trial = 0;
  std::vector<TrialResult> trials;
};

// Fold index of every row: a seeded shuffle dealt round-robin.
std::vector<std::size_t> FoldAssignment(std::size_t rows, std::size_t folds,
                                        std::uint64_t seed);

// Mean over folds of the mean relative error on each held-out fold.
// Requires 2 <= folds <= rows. `fold_errors` receives the per-fold values.
double KFoldError(const ConfigurationSpace& space, const HyperParams& hp,
                  const LabeledSet& data, std::size_t folds, std::uint64_t seed,
                  std::vector<double>* fold_errors = nullptr);

// Trial 0 evaluates the defaults, trial i > 0 a draw seeded by (seed, i).
// Trials share one fold assignment. Failing trials score +inf. The lowest
// cv_error wins, ties going to the earlier trial.
TuningResult RandomSearch(const ConfigurationSpace& space, LearnerId learner,
                          const HyperParamSpace& hp_space, const LabeledSet& data,
                          const TuningOptions& options);

// CSV: trial,params,fold_errors,mean_error,failure
void WriteTrialLog(std::ostream& out, const TuningResult& result);

}  // namespace cfgperf

#endif  // CFGPERF_TUNING_H_
