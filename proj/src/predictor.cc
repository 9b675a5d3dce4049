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

#include "cfgperf/predictor.h"

#include <cmath>

#include "cfgperf/error.h"
#include "cfgperf/learners.h"
#include "eigen_json.h"

namespace cfgperf {

double Predictor::Predict(const ConfigurationSpace& space, const Configuration& config) const {
  if (space.Fingerprint() != encoding_.fingerprint()) {
    throw Error(ErrorCode::kIncompatible,
                "configuration space '" + space.name() +
                    "' differs from the space the predictor was trained on");
  }
  space.CheckMembership(config.values, SubSpace::kFull);
  return PredictRow(config.values);
}

double Predictor::PredictRow(std::span<const double> values) const {
  return Evaluate(encoding_.Encode(values));
}

nlohmann::json Predictor::ToJson() const {
  return {{"learner", LearnerName(learner())},
          {"hyperparams", hyperparams_.values()},
          {"encoding", encoding_.ToJson()},
          {"state", StateJson()},
          {"warnings", warnings_}};
}

bool UsesNormalizedFeatures(LearnerId id) {
  return id == LearnerId::kKNN || id == LearnerId::kKRR || id == LearnerId::kSVR;
}

std::unique_ptr<Predictor> Train(const ConfigurationSpace& space, const LabeledSet& data,
                                 const HyperParams& hp) {
  data.Check(space.num_options());
  switch (hp.learner()) {
    case LearnerId::kMR: return MrModel::Fit(space, data, hp);
    case LearnerId::kCART: return CartModel::Fit(space, data, hp);
    case LearnerId::kRF: return RandomForestModel::Fit(space, data, hp);
    case LearnerId::kKNN: return KnnModel::Fit(space, data, hp);
    case LearnerId::kKRR: return KrrModel::Fit(space, data, hp);
    case LearnerId::kSVR: return SvrModel::Fit(space, data, hp);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown learner");
}

std::unique_ptr<Predictor> PredictorFromJson(const nlohmann::json& j) {
  try {
    const LearnerId id = ParseLearner(j.at("learner").get<std::string>());
    HyperParams hp(id, j.at("hyperparams"));
    FeatureEncoding enc = FeatureEncoding::FromJson(j.at("encoding"));
    const auto& st = j.at("state");
    const auto width = static_cast<Eigen::Index>(enc.width());
    switch (id) {
      case LearnerId::kMR:
        return MrModel::FromState(std::move(hp), std::move(enc), st);
      case LearnerId::kCART:
        return std::make_unique<CartModel>(std::move(hp), std::move(enc),
                                           CartTree::FromJson(st.at("tree")));
      case LearnerId::kRF: {
        std::vector<CartTree> trees;
        for (const auto& t : st.at("trees")) trees.push_back(CartTree::FromJson(t));
        return std::make_unique<RandomForestModel>(std::move(hp), std::move(enc),
                                                   std::move(trees));
      }
      case LearnerId::kKNN:
        return std::make_unique<KnnModel>(
            std::move(hp), std::move(enc), internal::MatrixFromJson(st.at("rows"), width),
            st.at("labels").get<std::vector<double>>());
      case LearnerId::kKRR:
        return std::make_unique<KrrModel>(
            std::move(hp), std::move(enc), internal::MatrixFromJson(st.at("rows"), width),
            internal::VectorFromJson(st.at("dual")), KernelSpec::FromJson(st.at("kernel")));
      case LearnerId::kSVR:
        return std::make_unique<SvrModel>(
            std::move(hp), std::move(enc),
            internal::MatrixFromJson(st.at("support"), width),
            internal::VectorFromJson(st.at("coef")), st.at("rho").get<double>(),
            KernelSpec::FromJson(st.at("kernel")));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidData, std::string("predictor document: ") + e.what());
  }
  throw Error(ErrorCode::kInvalidData, "unknown learner in predictor document");
}

std::vector<double> PredictBatch(const Predictor& predictor,
                                 const std::vector<Configuration>& configs) {
  for (const auto& c : configs) {
    if (c.values.size() != predictor.encoding().width()) {
      throw Error(ErrorCode::kPartialAssignment, "configuration has the wrong width");
    }
  }
  std::vector<double> out(configs.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = predictor.PredictRow(configs[k].values);
  }
  return out;
}

std::vector<double> PredictBatchSerial(const Predictor& predictor,
                                       const std::vector<Configuration>& configs) {
  std::vector<double> out;
  out.reserve(configs.size());
  for (const auto& c : configs) out.push_back(predictor.PredictRow(c.values));
  return out;
}

}  // namespace cfgperf
