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

#ifndef CFGPERF_HYPERPARAMS_H_
#define CFGPERF_HYPERPARAMS_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cfgperf {

enum class LearnerId { kMR, kCART, kRF, kKNN, kKRR, kSVR };

inline constexpr std::array<LearnerId, 6> kAllLearners = {
    LearnerId::kMR, LearnerId::kCART, LearnerId::kRF,
    LearnerId::kKNN, LearnerId::kKRR, LearnerId::kSVR};

// "MR", "CART", "RF", "kNN", "KRR", "SVR".
std::string LearnerName(LearnerId id);
// Case-insensitive. Throws Error(kInvalidArgument).
LearnerId ParseLearner(std::string_view name);

// A validated key/value map. Keys per learner:
//   SVR  C, epsilon, coef0, shrinking, tol
//   CART splitter, max_features, min_samples_leaf, random_state
//   RF   n_estimators, max_features, random_state
//   kNN  n_neighbors, weights, algorithm, p
//   KRR  alpha, kernel, degree, gamma
//   MR   minImprovement, lossFunction, functionTypes
// Missing keys take their defaults; unknown keys and out-of-range values
// throw Error(kInvalidArgument).
class HyperParams {
 public:
  HyperParams(LearnerId learner, const nlohmann::json& values);

  static HyperParams Defaults(LearnerId learner);
  static const std::vector<std::string>& Keys(LearnerId learner);

  LearnerId learner() const { return learner_; }
  const nlohmann::json& values() const { return values_; }

  double Number(const std::string& key) const;
  std::int64_t Integer(const std::string& key) const;
  std::string Text(const std::string& key) const;
  bool Flag(const std::string& key) const;

  HyperParams With(const std::string& key, const nlohmann::json& value) const;

  // Compact JSON with keys in sorted order.
  std::string Dump() const { return values_.dump(); }

  friend bool operator==(const HyperParams& a, const HyperParams& b) {
    return a.learner_ == b.learner_ && a.values_ == b.values_;
  }

 private:
  LearnerId learner_;
  nlohmann::json values_;
};

}  // namespace cfgperf

#endif  // CFGPERF_HYPERPARAMS_H_
