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

#ifndef CFGPERF_KERNEL_FUNCTIONS_H_
#define CFGPERF_KERNEL_FUNCTIONS_H_

#include <string>

#include <Eigen/Dense>

#include "json.hpp"

namespace cfgperf {

// Positive semi-definite similarity used by KRR and SVR.
//   linear:     <x, y>
//   polynomial: (gamma <x, y> + coef0)^degree
//   rbf:        exp(-gamma |x - y|^2)
struct KernelSpec {
  enum class Type { kLinear, kPolynomial, kRbf };
  Type type = Type::kRbf;
  double gamma = 1.0;
  double coef0 = 1.0;
  int degree = 3;

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y) const;

  std::string TypeName() const;
  static Type ParseType(const std::string& name);
  nlohmann::json ToJson() const;
  static KernelSpec FromJson(const nlohmann::json& j);
};

}  // namespace cfgperf

#endif  // CFGPERF_KERNEL_FUNCTIONS_H_
