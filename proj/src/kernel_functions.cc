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

#include "cfgperf/kernel_functions.h"

#include <cmath>

#include "cfgperf/error.h"

namespace cfgperf {

double KernelSpec::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y) const {
  switch (type) {
    case Type::kLinear:
      return x.dot(y);
    case Type::kPolynomial:
      return std::pow(gamma * x.dot(y) + coef0, degree);
    case Type::kRbf:
      return std::exp(-gamma * (x - y).squaredNorm());
  }
  return 0.0;
}

std::string KernelSpec::TypeName() const {
  switch (type) {
    case Type::kLinear: return "linear";
    case Type::kPolynomial: return "polynomial";
    case Type::kRbf: return "rbf";
  }
  return "";
}

KernelSpec::Type KernelSpec::ParseType(const std::string& name) {
  if (name == "linear") return Type::kLinear;
  if (name == "polynomial" || name == "poly") return Type::kPolynomial;
  if (name == "rbf") return Type::kRbf;
  throw Error(ErrorCode::kInvalidArgument, "unknown kernel '" + name + "'");
}

nlohmann::json KernelSpec::ToJson() const {
  return {{"kernel", TypeName()}, {"gamma", gamma}, {"coef0", coef0}, {"degree", degree}};
}

KernelSpec KernelSpec::FromJson(const nlohmann::json& j) {
  KernelSpec k;
  k.type = ParseType(j.at("kernel").get<std::string>());
  k.gamma = j.at("gamma").get<double>();
  k.coef0 = j.at("coef0").get<double>();
  k.degree = j.at("degree").get<int>();
  return k;
}

}  // namespace cfgperf
