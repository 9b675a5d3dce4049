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

#include <numeric>

#include "cfgperf/error.h"
#include "cfgperf/learners.h"
#include "cfgperf/rng.h"

namespace cfgperf {

RandomForestModel::RandomForestModel(HyperParams hp, FeatureEncoding encoding,
                                     std::vector<CartTree> trees)
    : Predictor(std::move(hp), std::move(encoding)), trees_(std::move(trees)) {
  if (trees_.empty()) throw Error(ErrorCode::kInvalidData, "forest has no trees");
}

std::unique_ptr<RandomForestModel> RandomForestModel::Fit(const ConfigurationSpace& space,
                                                          const LabeledSet& data,
                                                          const HyperParams& hp,
                                                          bool bootstrap) {
  FeatureEncoding enc(space, false);
  const Eigen::MatrixXd X = enc.EncodeAll(data.configs);
  const std::size_t n = data.size();
  const auto count = static_cast<std::ptrdiff_t>(hp.Integer("n_estimators"));
  const auto state = static_cast<std::uint64_t>(hp.Integer("random_state"));
  std::vector<CartTree> trees(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    const auto ti = static_cast<std::uint64_t>(t);
    std::vector<std::size_t> rows(n);
    if (bootstrap) {
      Rng rng(HashSeed({state, ti, 0}));
      for (auto& r : rows) r = static_cast<std::size_t>(rng.UniformBelow(n));
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    CartParams params;
    params.max_features = hp.Number("max_features");
    params.seed = bootstrap ? HashSeed({state, ti, 1}) : state;
    trees[static_cast<std::size_t>(t)] = CartTree::Fit(X, data.performance, rows, params);
  }
  return std::make_unique<RandomForestModel>(hp, std::move(enc), std::move(trees));
}

double RandomForestModel::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  double sum = 0.0;
  for (const auto& t : trees_) sum += t.Predict(features);
  return sum / static_cast<double>(trees_.size());
}

nlohmann::json RandomForestModel::StateJson() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) trees.push_back(t.ToJson());
  return {{"trees", trees}};
}

}  // namespace cfgperf
