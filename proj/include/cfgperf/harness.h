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

#ifndef CFGPERF_HARNESS_H_
#define CFGPERF_HARNESS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfgperf/evaluation.h"
#include "cfgperf/measurement.h"
#include "cfgperf/sample_set.h"
#include "cfgperf/space.h"
#include "cfgperf/strategy.h"
#include "cfgperf/tuning.h"
#include "json.hpp"

namespace cfgperf {

// L = L_Bin x L_Num. Pairings violating a mixed constraint are dropped and
// counted; rows keep binary-major order.
struct LearningSet {
  std::vector<Configuration> configs;
  std::size_t product_size = 0;
  std::size_t dropped = 0;
};

// Throws Error(kIncompatible, "strategies incompatible with constraints")
// when nothing survives the filter.
LearningSet BuildLearningSet(const ConfigurationSpace& space, const SampleSet& binary,
                             const SampleSet& numeric);

// Plan document (JSON). Exactly one system source:
//   "system": {"space": path, "measurements": path}
//   "system": {"synthetic": {...synthetic spec...}}
// Relative paths resolve against the plan file's directory.
struct ExperimentPlan {
  std::string space_path;
  std::string measurements_path;
  std::optional<nlohmann::json> synthetic;
  std::vector<std::string> learners;
  std::vector<std::string> binary;
  std::vector<std::string> numeric;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::size_t budget = 100;
  std::size_t folds = 5;
  std::string hyperparams_path;  // empty: builtin domains
  std::string pbd_seeds_path;    // empty: builtin seeds
  int ofat_levels = 5;
  double cci_alpha = kDefaultCciAlpha;
  std::size_t dod_restarts = 5;
  std::string dod_terms = "quadratic";
  bool exclude_learning_set = false;
  std::string output_dir = "results";
  std::uint64_t master_seed = 0;

  // Throws Error(kInvalidData) on malformed or empty lists, duplicate seeds
  // or unknown learner / strategy names.
  static ExperimentPlan FromJson(const nlohmann::json& j, const std::string& base_dir = "");
  static ExperimentPlan Load(const std::string& path);
  nlohmann::json ToJson() const;
};

struct LoadedSystem {
  ConfigurationSpace space;
  MeasurementTable table;
};

LoadedSystem LoadSystem(const ExperimentPlan& plan);

struct RunOptions {
  // 0: CFGPERF_WORKERS if set, else the OpenMP default.
  std::size_t workers = 0;
  // Called after each finished cell from the worker thread (serialized).
  std::function<void(std::size_t done, std::size_t total)> progress;
};

// One cell per (learner, binary, numeric) in plan order. Random strategies
// run once per plan seed and are averaged. Cell failures are recorded in the
// cell with an infinite error.
std::vector<ExperimentCell> RunExperiment(const ExperimentPlan& plan,
                                          const LoadedSystem& system,
                                          const RunOptions& options = {});

// Worker count from the environment (CFGPERF_WORKERS), 0 when unset.
std::size_t WorkersFromEnvironment();

// CSV columns: system,learner,binary,numeric,learning_set_size,
// product_size,relative_size,mean_error,seed_errors,hyperparams,failure
void WriteCells(std::ostream& out, const std::vector<ExperimentCell>& cells);
std::vector<ExperimentCell> ReadCells(std::istream& in);
std::vector<ExperimentCell> ReadCellsFile(const std::string& path);

}  // namespace cfgperf

#endif  // CFGPERF_HARNESS_H_
