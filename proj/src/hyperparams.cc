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

#include "cfgperf/hyperparams.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "cfgperf/error.h"

namespace cfgperf {
namespace {

using nlohmann::json;

json DefaultValues(LearnerId id) {
  switch (id) {
    case LearnerId::kSVR:
      return {{"C", 1.0}, {"epsilon", 0.1}, {"coef0", 0.0}, {"shrinking", true},
              {"tol", 1e-3}};
    case LearnerId::kCART:
      return {{"splitter", "best"}, {"max_features", 1.0}, {"min_samples_leaf", 1},
              {"random_state", 0}};
    case LearnerId::kRF:
      return {{"n_estimators", 30}, {"max_features", 1.0}, {"random_state", 0}};
    case LearnerId::kKNN:
      return {{"n_neighbors", 5}, {"weights", "uniform"}, {"algorithm", "auto"},
              {"p", 2.0}};
    case LearnerId::kKRR:
      return {{"alpha", 1.0}, {"kernel", "linear"}, {"degree", 3}, {"gamma", 0.1}};
    case LearnerId::kMR:
      return {{"minImprovement", 0.001}, {"lossFunction", "relative"},
              {"functionTypes", "polynomial"}};
  }
  return json::object();
}

[[noreturn]] void Bad(LearnerId id, const std::string& key, const std::string& why) {
  throw Error(ErrorCode::kInvalidArgument,
              LearnerName(id) + " hyper-parameter '" + key + "' " + why);
}

double Num(LearnerId id, const json& v, const std::string& key) {
  if (!v.is_number()) Bad(id, key, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) Bad(id, key, "must be finite");
  return x;
}

std::int64_t Int(LearnerId id, const json& v, const std::string& key) {
  if (!v.is_number_integer()) Bad(id, key, "must be an integer");
  return v.get<std::int64_t>();
}

void OneOf(LearnerId id, const json& v, const std::string& key,
           std::initializer_list<const char*> allowed) {
  if (!v.is_string()) Bad(id, key, "must be a string");
  const std::string s = v.get<std::string>();
  for (const char* a : allowed) {
    if (s == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
  Bad(id, key, "must be one of " + list);
}

void ValidateValue(LearnerId id, const std::string& key, const json& v) {
  if (key == "C") {
    if (Num(id, v, key) <= 0) Bad(id, key, "must be > 0");
  } else if (key == "epsilon" || key == "alpha" || key == "minImprovement") {
    if (Num(id, v, key) < 0) Bad(id, key, "must be >= 0");
  } else if (key == "coef0") {
    Num(id, v, key);
  } else if (key == "tol" || key == "gamma") {
    if (Num(id, v, key) <= 0) Bad(id, key, "must be > 0");
  } else if (key == "p") {
    if (Num(id, v, key) < 1) Bad(id, key, "must be >= 1");
  } else if (key == "max_features") {
    const double x = Num(id, v, key);
    if (!(x > 0 && x <= 1)) Bad(id, key, "must lie in (0, 1]");
  } else if (key == "shrinking") {
    if (!v.is_boolean()) Bad(id, key, "must be a boolean");
  } else if (key == "min_samples_leaf" || key == "n_estimators" ||
             key == "n_neighbors" || key == "degree") {
    if (Int(id, v, key) < 1) Bad(id, key, "must be >= 1");
  } else if (key == "random_state") {
    if (Int(id, v, key) < 0) Bad(id, key, "must be >= 0");
  } else if (key == "splitter") {
    OneOf(id, v, key, {"best", "random"});
  } else if (key == "weights") {
    OneOf(id, v, key, {"uniform", "distance"});
  } else if (key == "algorithm") {
    OneOf(id, v, key, {"auto", "ball_tree", "kd_tree", "brute"});
  } else if (key == "kernel") {
    OneOf(id, v, key, {"linear", "polynomial", "rbf"});
  } else if (key == "lossFunction") {
    OneOf(id, v, key, {"relative", "absolute"});
  } else if (key == "functionTypes") {
    OneOf(id, v, key, {"linear", "polynomial", "logarithmic", "full"});
  }
}

}  // namespace

std::string LearnerName(LearnerId id) {
  switch (id) {
    case LearnerId::kMR: return "MR";
    case LearnerId::kCART: return "CART";
    case LearnerId::kRF: return "RF";
    case LearnerId::kKNN: return "kNN";
    case LearnerId::kKRR: return "KRR";
    case LearnerId::kSVR: return "SVR";
  }
  return "";
}

LearnerId ParseLearner(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (LearnerId id : kAllLearners) {
    std::string n = LearnerName(id);
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (n == lower) return id;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown learner '" + std::string(name) + "'");
}

const std::vector<std::string>& HyperParams::Keys(LearnerId learner) {
  static const std::array<std::vector<std::string>, 6> keys = [] {
    std::array<std::vector<std::string>, 6> k;
    for (LearnerId id : kAllLearners) {
      const json defaults = DefaultValues(id);
      for (const auto& [key, v] : defaults.items()) {
        k[static_cast<std::size_t>(id)].push_back(key);
      }
    }
    return k;
  }();
  return keys[static_cast<std::size_t>(learner)];
}

HyperParams::HyperParams(LearnerId learner, const json& values)
    : learner_(learner), values_(DefaultValues(learner)) {
  if (!values.is_null() && !values.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "hyper-parameters must be a JSON object");
  }
  if (values.is_object()) {
    for (const auto& [key, v] : values.items()) {
      if (!values_.contains(key)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "unknown " + LearnerName(learner) + " hyper-parameter '" + key + "'");
      }
      // Whole-valued floats are accepted for integer keys.
      if (values_[key].is_number_integer() && v.is_number_float() &&
          std::floor(v.get<double>()) == v.get<double>()) {
        values_[key] = static_cast<std::int64_t>(v.get<double>());
      } else if (values_[key].is_number_float() && v.is_number_integer()) {
        values_[key] = v.get<double>();
      } else {
        values_[key] = v;
      }
    }
  }
  for (const auto& [key, v] : values_.items()) ValidateValue(learner_, key, v);
}

HyperParams HyperParams::Defaults(LearnerId learner) {
  return HyperParams(learner, json::object());
}

double HyperParams::Number(const std::string& key) const { return values_.at(key).get<double>(); }

std::int64_t HyperParams::Integer(const std::string& key) const {
  return values_.at(key).get<std::int64_t>();
}

std::string HyperParams::Text(const std::string& key) const {
  return values_.at(key).get<std::string>();
}

bool HyperParams::Flag(const std::string& key) const { return values_.at(key).get<bool>(); }

HyperParams HyperParams::With(const std::string& key, const json& value) const {
  json v = values_;
  v[key] = value;
  return HyperParams(learner_, v);
}

}  // namespace cfgperf
