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

#include "cfgperf/encoding.h"

#include <cmath>

#include "cfgperf/error.h"

namespace cfgperf {

void LabeledSet::Check(std::size_t width) const {
  if (configs.empty()) throw Error(ErrorCode::kInvalidData, "learning set is empty");
  if (configs.size() != performance.size()) {
    throw Error(ErrorCode::kInvalidData, "learning set has mismatched label count");
  }
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].values.size() != width) {
      throw Error(ErrorCode::kPartialAssignment, "learning set row has the wrong width");
    }
    if (!(performance[i] > 0.0) || !std::isfinite(performance[i])) {
      throw Error(ErrorCode::kInvalidData, "performance values must be positive");
    }
  }
}

FeatureEncoding::FeatureEncoding(const ConfigurationSpace& space, bool normalize)
    : fingerprint_(space.Fingerprint()),
      num_binary_(space.num_binary()),
      normalize_(normalize) {
  for (const auto& o : space.numeric_options()) {
    mins_.push_back(o.min());
    maxs_.push_back(o.max());
  }
}

Eigen::VectorXd FeatureEncoding::Encode(std::span<const double> values) const {
  if (values.size() != width()) {
    throw Error(ErrorCode::kPartialAssignment, "configuration has the wrong width");
  }
  Eigen::VectorXd f(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < num_binary_; ++i) f[static_cast<Eigen::Index>(i)] = values[i];
  for (std::size_t k = 0; k < mins_.size(); ++k) {
    const double v = values[num_binary_ + k];
    f[static_cast<Eigen::Index>(num_binary_ + k)] =
        normalize_ ? (v - mins_[k]) / (maxs_[k] - mins_[k]) : v;
  }
  return f;
}

Eigen::MatrixXd FeatureEncoding::EncodeAll(const std::vector<Configuration>& configs) const {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(configs.size()),
                    static_cast<Eigen::Index>(width()));
  for (std::size_t r = 0; r < configs.size(); ++r) {
    X.row(static_cast<Eigen::Index>(r)) = Encode(configs[r].values).transpose();
  }
  return X;
}

nlohmann::json FeatureEncoding::ToJson() const {
  return {{"fingerprint", fingerprint_}, {"num_binary", num_binary_},
          {"mins", mins_},               {"maxs", maxs_},
          {"normalize", normalize_}};
}

FeatureEncoding FeatureEncoding::FromJson(const nlohmann::json& j) {
  FeatureEncoding e;
  e.fingerprint_ = j.at("fingerprint").get<std::string>();
  e.num_binary_ = j.at("num_binary").get<std::size_t>();
  e.mins_ = j.at("mins").get<std::vector<double>>();
  e.maxs_ = j.at("maxs").get<std::vector<double>>();
  e.normalize_ = j.at("normalize").get<bool>();
  if (e.mins_.size() != e.maxs_.size()) {
    throw Error(ErrorCode::kInvalidData, "encoding bounds disagree in length");
  }
  return e;
}

}  // namespace cfgperf
