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

#ifndef CFGPERF_ENCODING_H_
#define CFGPERF_ENCODING_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfgperf/space.h"
#include "json.hpp"

namespace cfgperf {

// Training data: full configurations with positive performance values.
struct LabeledSet {
  std::vector<Configuration> configs;
  std::vector<double> performance;

  std::size_t size() const { return configs.size(); }
  // Throws Error(kInvalidData) when empty, ragged or non-positive.
  void Check(std::size_t width) const;
};

// Maps full configurations to feature vectors in declared option order.
// Binary options pass through as 0/1. Numeric options are either kept raw or
// normalized to [0,1] by their domain bounds.
class FeatureEncoding {
 public:
  FeatureEncoding() = default;
  FeatureEncoding(const ConfigurationSpace& space, bool normalize);

  Eigen::VectorXd Encode(std::span<const double> values) const;
  Eigen::MatrixXd EncodeAll(const std::vector<Configuration>& configs) const;

  std::size_t width() const { return num_binary_ + mins_.size(); }
  bool normalized() const { return normalize_; }
  const std::string& fingerprint() const { return fingerprint_; }

  nlohmann::json ToJson() const;
  static FeatureEncoding FromJson(const nlohmann::json& j);

 private:
  std::string fingerprint_;
  std::size_t num_binary_ = 0;
  std::vector<double> mins_;
  std::vector<double> maxs_;
  bool normalize_ = false;
};

}  // namespace cfgperf

#endif  // CFGPERF_ENCODING_H_
