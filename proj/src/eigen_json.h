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

#ifndef CFGPERF_SRC_EIGEN_JSON_H_
#define CFGPERF_SRC_EIGEN_JSON_H_

#include <vector>

#include <Eigen/Dense>

#include "cfgperf/error.h"
#include "json.hpp"

namespace cfgperf::internal {

inline nlohmann::json MatrixToJson(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> r(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(j)] = m(i, j);
    rows.push_back(r);
  }
  return rows;
}

inline Eigen::MatrixXd MatrixFromJson(const nlohmann::json& j, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  Eigen::Index i = 0;
  for (const auto& row : j) {
    const auto r = row.get<std::vector<double>>();
    if (static_cast<Eigen::Index>(r.size()) != cols) {
      throw Error(ErrorCode::kInvalidData, "matrix row has the wrong width");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = r[static_cast<std::size_t>(c)];
    ++i;
  }
  return m;
}

inline nlohmann::json VectorToJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline Eigen::VectorXd VectorFromJson(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace cfgperf::internal

#endif  // CFGPERF_SRC_EIGEN_JSON_H_
