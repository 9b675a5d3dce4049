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

#include <algorithm>
#include <numeric>

#include "cfgperf/error.h"
#include "cfgperf/kernels.h"
#include "cfgperf/learners.h"
#include "eigen_json.h"

namespace cfgperf {
namespace {

constexpr double kZeroDistance = 1e-12;

}  // namespace

KnnModel::KnnModel(HyperParams hp, FeatureEncoding encoding, Eigen::MatrixXd rows,
                   std::vector<double> labels)
    : Predictor(std::move(hp), std::move(encoding)),
      rows_(std::move(rows)),
      labels_(std::move(labels)) {
  const auto k = static_cast<std::size_t>(hyperparams().Integer("n_neighbors"));
  if (labels_.empty() || static_cast<std::size_t>(rows_.rows()) != labels_.size()) {
    throw Error(ErrorCode::kInvalidData, "kNN needs one label per stored row");
  }
  if (k > labels_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_neighbors = " + std::to_string(k) + " exceeds the " +
                    std::to_string(labels_.size()) + " training rows");
  }
}

std::unique_ptr<KnnModel> KnnModel::Fit(const ConfigurationSpace& space,
                                        const LabeledSet& data, const HyperParams& hp) {
  FeatureEncoding enc(space, true);
  Eigen::MatrixXd X = enc.EncodeAll(data.configs);
  return std::make_unique<KnnModel>(hp, std::move(enc), std::move(X), data.performance);
}

double KnnModel::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  const std::size_t n = labels_.size();
  const auto k = static_cast<std::size_t>(hyperparams().Integer("n_neighbors"));
  const double p = hyperparams().Number("p");
  std::vector<double> dist(n);
  kernels::serial::MinkowskiDistances(rows_, features, p, dist);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto closer = [&](std::size_t a, std::size_t b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    closer);
  if (hyperparams().Text("weights") == "distance") {
    if (dist[idx[0]] <= kZeroDistance) {
      // Exact match: the stored label, averaged over coincident rows.
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (dist[i] <= kZeroDistance) {
          sum += labels_[i];
          ++count;
        }
      }
      return sum / static_cast<double>(count);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double w = 1.0 / dist[idx[j]];
      num += w * labels_[idx[j]];
      den += w;
    }
    return num / den;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) sum += labels_[idx[j]];
  return sum / static_cast<double>(k);
}

nlohmann::json KnnModel::StateJson() const {
  return {{"rows", internal::MatrixToJson(rows_)}, {"labels", labels_}};
}

}  // namespace cfgperf
