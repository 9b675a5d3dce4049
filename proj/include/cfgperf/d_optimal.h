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

#ifndef CFGPERF_D_OPTIMAL_H_
#define CFGPERF_D_OPTIMAL_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace cfgperf {

struct DOptimalOptions {
  std::size_t size = 0;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 10000;
  // Random initial subsets tried per restart before giving up on it.
  std::size_t initial_attempts = 25;
};

struct DOptimalRestart {
  double initial_log_det = 0.0;
  double final_log_det = 0.0;
  std::size_t swaps = 0;
  bool singular = true;
};

struct DOptimalResult {
  std::vector<std::size_t> selected;  // ascending candidate indices
  double log_det = 0.0;               // log det(X'X) of the selection
  std::size_t best_restart = 0;
  std::vector<DOptimalRestart> restarts;
};

// Chooses `size` rows of the candidate model matrix approximately maximizing
// det(X'X) (equivalently minimizing the determinant of the dispersion matrix
// (X'X)^-1). Each restart starts from a seeded random non-singular subset and
// performs single-point exchanges: selected points are visited in ascending
// leverage order and the first one with an improving swap is exchanged with
// its best candidate, until no swap improves the determinant. The best restart
// wins, ties going to the lower restart index.
//
// Throws Error(kSingularDesign) when every restart fails to find a
// non-singular starting subset.
DOptimalResult SelectDOptimal(const Eigen::MatrixXd& candidates,
                              const DOptimalOptions& options);

// log det(X'X) of the given rows, or -inf if singular.
double LogDetInformation(const Eigen::MatrixXd& candidates,
                         const std::vector<std::size_t>& rows);

}  // namespace cfgperf

#endif  // CFGPERF_D_OPTIMAL_H_
