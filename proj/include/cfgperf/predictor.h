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

#ifndef CFGPERF_PREDICTOR_H_
#define CFGPERF_PREDICTOR_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfgperf/encoding.h"
#include "cfgperf/hyperparams.h"
#include "cfgperf/space.h"
#include "json.hpp"

namespace cfgperf {

// A trained, immutable performance model. Safe to share across threads.
class Predictor {
 public:
  virtual ~Predictor() = default;

  LearnerId learner() const { return hyperparams_.learner(); }
  const HyperParams& hyperparams() const { return hyperparams_; }
  const FeatureEncoding& encoding() const { return encoding_; }
  // Non-fatal training notes, e.g. an SVR run that hit its iteration cap.
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Throws Error(kIncompatible) if `config` comes from a different space and
  // Error(kPartialAssignment / kInvalidArgument) if it is not a member.
  double Predict(const ConfigurationSpace& space, const Configuration& config) const;
  // Unchecked prediction for a full-width row of raw option values.
  double PredictRow(std::span<const double> values) const;
  double PredictFeatures(const Eigen::Ref<const Eigen::VectorXd>& features) const {
    return Evaluate(features);
  }

  // {"learner", "hyperparams", "encoding", "state", "warnings"}
  nlohmann::json ToJson() const;

 protected:
  Predictor(HyperParams hp, FeatureEncoding encoding)
      : hyperparams_(std::move(hp)), encoding_(std::move(encoding)) {}

  virtual double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const = 0;
  virtual nlohmann::json StateJson() const = 0;

  std::vector<std::string> warnings_;

 private:
  HyperParams hyperparams_;
  FeatureEncoding encoding_;
};

// Whether a learner sees numeric options normalized to [0,1] (kNN, KRR, SVR)
// or raw (MR, CART, RF).
bool UsesNormalizedFeatures(LearnerId id);

// Trains the learner named by `hp` on `data`. Throws Error on invalid input.
std::unique_ptr<Predictor> Train(const ConfigurationSpace& space, const LabeledSet& data,
                                 const HyperParams& hp);

// Rebuilds a predictor from ToJson output. Throws Error(kInvalidData).
std::unique_ptr<Predictor> PredictorFromJson(const nlohmann::json& j);

// Predictions for many configurations, rows in parallel.
std::vector<double> PredictBatch(const Predictor& predictor,
                                 const std::vector<Configuration>& configs);
std::vector<double> PredictBatchSerial(const Predictor& predictor,
                                       const std::vector<Configuration>& configs);

}  // namespace cfgperf

#endif  // CFGPERF_PREDICTOR_H_
