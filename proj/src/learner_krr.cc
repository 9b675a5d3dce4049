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

#include <cmath>

#include "cfgperf/error.h"
#include "cfgperf/kernels.h"
#include "cfgperf/learners.h"
#include "eigen_json.h"

namespace cfgperf {

KrrModel::KrrModel(HyperParams hp, FeatureEncoding encoding, Eigen::MatrixXd rows,
                   Eigen::VectorXd dual, KernelSpec kernel)
    : Predictor(std::move(hp), std::move(encoding)),
      rows_(std::move(rows)),
      dual_(std::move(dual)),
      kernel_(kernel) {
  if (rows_.rows() != dual_.size()) {
    throw Error(ErrorCode::kInvalidData, "KRR needs one dual coefficient per row");
  }
}

KernelSpec KrrModel::KernelFor(const HyperParams& hp) {
  KernelSpec k;
  k.type = KernelSpec::ParseType(hp.Text("kernel"));
  k.gamma = hp.Number("gamma");
  k.degree = static_cast<int>(hp.Integer("degree"));
  k.coef0 = 1.0;
  return k;
}

std::unique_ptr<KrrModel> KrrModel::Fit(const ConfigurationSpace& space,
                                        const LabeledSet& data, const HyperParams& hp) {
  FeatureEncoding enc(space, true);
  Eigen::MatrixXd X = enc.EncodeAll(data.configs);
  const KernelSpec kernel = KernelFor(hp);
  const double alpha = hp.Number("alpha");
  Eigen::MatrixXd A = kernels::parallel::Gram(X, kernel);
  A.diagonal().array() += alpha;
  const Eigen::Map<const Eigen::VectorXd> y(data.performance.data(),
                                            static_cast<Eigen::Index>(data.size()));
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  const Eigen::VectorXd d = ldlt.vectorD();
  const double top = d.cwiseAbs().maxCoeff();
  const bool singular = ldlt.info() != Eigen::Success || !(top > 0.0) ||
                        d.minCoeff() <= 1e-13 * top;
  if (singular && alpha == 0.0) {
    throw Error(ErrorCode::kNumerical,
                "kernel matrix is singular with alpha = 0; use alpha > 0");
  }
  Eigen::VectorXd dual = ldlt.solve(y);
  if (!dual.allFinite()) {
    throw Error(ErrorCode::kNumerical, "KRR solve produced non-finite coefficients");
  }
  return std::make_unique<KrrModel>(hp, std::move(enc), std::move(X), std::move(dual),
                                    kernel);
}

double KrrModel::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    s += dual_[i] * kernel_(rows_.row(i).transpose(), features);
  }
  return s;
}

nlohmann::json KrrModel::StateJson() const {
  return {{"rows", internal::MatrixToJson(rows_)},
          {"dual", internal::VectorToJson(dual_)},
          {"kernel", kernel_.ToJson()}};
}

}  // namespace cfgperf
