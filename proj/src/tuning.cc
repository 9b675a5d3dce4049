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

#include "cfgperf/tuning.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cfgperf/error.h"
#include "cfgperf/format.h"
#include "cfgperf/kernels.h"
#include "cfgperf/predictor.h"

namespace cfgperf {
namespace {

using nlohmann::json;

ParamDomain Choice(std::vector<json> values) {
  ParamDomain d;
  d.kind = ParamDomain::Kind::kChoice;
  d.choices = std::move(values);
  return d;
}

ParamDomain Range(ParamDomain::Kind kind, double lo, double hi) {
  ParamDomain d;
  d.kind = kind;
  d.lo = lo;
  d.hi = hi;
  return d;
}

HyperParamSpace::Domains DefaultDomains(LearnerId id) {
  using K = ParamDomain::Kind;
  switch (id) {
    case LearnerId::kSVR:
      return {{"C", Range(K::kLogUniform, 0.01, 1000.0)},
              {"epsilon", Range(K::kLogUniform, 0.001, 1.0)},
              {"coef0", Choice({0.0, 0.5, 1.0})},
              {"shrinking", Choice({true, false})},
              {"tol", Range(K::kLogUniform, 1e-5, 1e-2)}};
    case LearnerId::kCART:
      return {{"splitter", Choice({"best", "random"})},
              {"max_features", Choice({0.25, 0.5, 0.75, 1.0})},
              {"min_samples_leaf", Range(K::kInt, 1, 10)},
              {"random_state", Range(K::kInt, 0, 100)}};
    case LearnerId::kRF:
      return {{"n_estimators", Range(K::kInt, 10, 60)},
              {"max_features", Choice({0.25, 0.5, 0.75, 1.0})},
              {"random_state", Range(K::kInt, 0, 100)}};
    case LearnerId::kKNN:
      return {{"n_neighbors", Range(K::kInt, 1, 15)},
              {"weights", Choice({"uniform", "distance"})},
              {"algorithm", Choice({"auto", "ball_tree", "kd_tree", "brute"})},
              {"p", Choice({1.0, 2.0, 3.0})}};
    case LearnerId::kKRR:
      return {{"alpha", Range(K::kLogUniform, 1e-6, 10.0)},
              {"kernel", Choice({"linear", "polynomial", "rbf"})},
              {"degree", Range(K::kInt, 2, 4)},
              {"gamma", Range(K::kLogUniform, 1e-3, 10.0)}};
    case LearnerId::kMR:
      return {{"minImprovement", Choice({0.0001, 0.001, 0.01, 0.05})},
              {"lossFunction", Choice({"relative", "absolute"})},
              {"functionTypes", Choice({"linear", "polynomial", "logarithmic", "full"})}};
  }
  return {};
}

void CheckDomains(LearnerId id, const HyperParamSpace::Domains& domains) {
  const HyperParams defaults = HyperParams::Defaults(id);
  const auto& keys = HyperParams::Keys(id);
  if (domains.size() != keys.size()) {
    throw Error(ErrorCode::kInvalidData,
                LearnerName(id) + " search space must cover every hyper-parameter");
  }
  for (const auto& [key, dom] : domains) {
    if (!defaults.values().contains(key)) {
      throw Error(ErrorCode::kInvalidData,
                  "unknown " + LearnerName(id) + " hyper-parameter '" + key + "'");
    }
    if (!dom.Contains(defaults.values().at(key))) {
      throw Error(ErrorCode::kInvalidData, LearnerName(id) + " domain of '" + key +
                                               "' does not contain the default value");
    }
  }
}

}  // namespace

json ParamDomain::Draw(Rng& rng) const {
  switch (kind) {
    case Kind::kChoice:
      return choices[static_cast<std::size_t>(rng.UniformBelow(choices.size()))];
    case Kind::kInt: {
      const auto a = static_cast<std::int64_t>(lo);
      const auto b = static_cast<std::int64_t>(hi);
      return a + static_cast<std::int64_t>(rng.UniformBelow(static_cast<std::uint64_t>(b - a + 1)));
    }
    case Kind::kLogUniform:
      return std::exp(std::log(lo) + rng.UniformDouble() * (std::log(hi) - std::log(lo)));
    case Kind::kUniform:
      return lo + rng.UniformDouble() * (hi - lo);
  }
  return nullptr;
}

bool ParamDomain::Contains(const json& v) const {
  switch (kind) {
    case Kind::kChoice:
      for (const auto& c : choices) {
        if (c == v || (c.is_number() && v.is_number() && c.get<double>() == v.get<double>())) {
          return true;
        }
      }
      return false;
    case Kind::kInt:
      return v.is_number_integer() && v.get<double>() >= lo && v.get<double>() <= hi;
    case Kind::kLogUniform:
    case Kind::kUniform:
      return v.is_number() && v.get<double>() >= lo && v.get<double>() <= hi;
  }
  return false;
}

json ParamDomain::ToJson() const {
  switch (kind) {
    case Kind::kChoice: return {{"choice", choices}};
    case Kind::kInt:
      return {{"int", {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)}}};
    case Kind::kLogUniform: return {{"log_uniform", {lo, hi}}};
    case Kind::kUniform: return {{"uniform", {lo, hi}}};
  }
  return nullptr;
}

ParamDomain ParamDomain::FromJson(const json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw Error(ErrorCode::kInvalidData, "a domain is an object with exactly one key");
  }
  const auto first = j.begin();
  const std::string name = first.key();
  const json& value = first.value();
  try {
    if (name == "choice") {
      if (!value.is_array() || value.empty()) {
        throw Error(ErrorCode::kInvalidData, "choice domain must be a non-empty list");
      }
      return Choice(value.get<std::vector<json>>());
    }
    const auto bounds = value.get<std::vector<double>>();
    if (bounds.size() != 2 || !(bounds[0] <= bounds[1])) {
      throw Error(ErrorCode::kInvalidData, "range domain needs [lo, hi] with lo <= hi");
    }
    if (name == "int") {
      if (std::floor(bounds[0]) != bounds[0] || std::floor(bounds[1]) != bounds[1]) {
        throw Error(ErrorCode::kInvalidData, "int domain bounds must be integers");
      }
      return Range(Kind::kInt, bounds[0], bounds[1]);
    }
    if (name == "log_uniform") {
      if (!(bounds[0] > 0)) throw Error(ErrorCode::kInvalidData, "log_uniform needs lo > 0");
      return Range(Kind::kLogUniform, bounds[0], bounds[1]);
    }
    if (name == "uniform") return Range(Kind::kUniform, bounds[0], bounds[1]);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidData, std::string("domain: ") + e.what());
  }
  throw Error(ErrorCode::kInvalidData, "unknown domain kind '" + name + "'");
}

HyperParamSpace HyperParamSpace::Default() {
  HyperParamSpace s;
  for (LearnerId id : kAllLearners) s.domains_.push_back(DefaultDomains(id));
  return s;
}

HyperParamSpace HyperParamSpace::FromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidData, "search space must be an object");
  HyperParamSpace s = Default();
  for (const auto& [learner, params] : j.items()) {
    const LearnerId id = ParseLearner(learner);
    if (!params.is_object()) {
      throw Error(ErrorCode::kInvalidData, learner + " search space must be an object");
    }
    Domains domains;
    // Canonical key order regardless of document order; keys the document
    // leaves out keep their default domains.
    const Domains fallback = DefaultDomains(id);
    for (std::size_t k = 0; k < fallback.size(); ++k) {
      const std::string& key = fallback[k].first;
      if (params.contains(key)) {
        domains.emplace_back(key, ParamDomain::FromJson(params.at(key)));
      } else {
        domains.push_back(fallback[k]);
      }
    }
    for (const auto& [key, v] : params.items()) {
      bool known = false;
      for (const auto& k : HyperParams::Keys(id)) known = known || k == key;
      if (!known) {
        throw Error(ErrorCode::kInvalidData,
                    "unknown " + learner + " hyper-parameter '" + key + "'");
      }
    }
    CheckDomains(id, domains);
    s.domains_[static_cast<std::size_t>(id)] = std::move(domains);
  }
  return s;
}

HyperParamSpace HyperParamSpace::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return FromJson(json::parse(ss.str()));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidData, path + ": " + e.what());
  }
}

const HyperParamSpace::Domains& HyperParamSpace::For(LearnerId learner) const {
  return domains_[static_cast<std::size_t>(learner)];
}

HyperParams HyperParamSpace::Draw(LearnerId learner, Rng& rng) const {
  json values = json::object();
  for (const auto& [key, dom] : For(learner)) values[key] = dom.Draw(rng);
  return HyperParams(learner, values);
}

json HyperParamSpace::ToJson() const {
  json out = json::object();
  for (LearnerId id : kAllLearners) {
    json params = json::object();
    for (const auto& [key, dom] : For(id)) params[key] = dom.ToJson();
    out[LearnerName(id)] = params;
  }
  return out;
}

std::vector<std::size_t> FoldAssignment(std::size_t rows, std::size_t folds,
                                        std::uint64_t seed) {
  if (folds < 2 || rows < folds) {
    throw Error(ErrorCode::kInvalidArgument,
                "k-fold needs 2 <= folds <= rows (folds = " + std::to_string(folds) +
                    ", rows = " + std::to_string(rows) + ")");
  }
  Rng rng(seed);
  const std::vector<std::size_t> perm = PartialShuffle(rows, rows, rng);
  std::vector<std::size_t> fold(rows);
  for (std::size_t pos = 0; pos < rows; ++pos) fold[perm[pos]] = pos % folds;
  return fold;
}

double KFoldError(const ConfigurationSpace& space, const HyperParams& hp,
                  const LabeledSet& data, std::size_t folds, std::uint64_t seed,
                  std::vector<double>* fold_errors) {
  const std::vector<std::size_t> fold = FoldAssignment(data.size(), folds, seed);
  std::vector<double> errors;
  for (std::size_t f = 0; f < folds; ++f) {
    LabeledSet train, test;
    for (std::size_t i = 0; i < data.size(); ++i) {
      LabeledSet& dst = fold[i] == f ? test : train;
      dst.configs.push_back(data.configs[i]);
      dst.performance.push_back(data.performance[i]);
    }
    if (test.size() == 0) throw Error(ErrorCode::kInvalidArgument, "empty fold");
    const auto model = Train(space, train, hp);
    const std::vector<double> pred = PredictBatchSerial(*model, test.configs);
    errors.push_back(kernels::serial::MeanRelativeError(test.performance, pred));
  }
  double sum = 0.0;
  for (double e : errors) sum += e;
  if (fold_errors) *fold_errors = errors;
  return sum / static_cast<double>(folds);
}

TuningResult RandomSearch(const ConfigurationSpace& space, LearnerId learner,
                          const HyperParamSpace& hp_space, const LabeledSet& data,
                          const TuningOptions& options) {
  if (options.budget < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  FoldAssignment(data.size(), options.folds, options.seed);  // validates sizes
  const std::uint64_t fold_seed = HashSeed({options.seed, 0x666f6c64ULL});
  std::vector<TrialResult> trials(options.budget);
  const auto budget = static_cast<std::ptrdiff_t>(options.budget);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < budget; ++t) {
    TrialResult& r = trials[static_cast<std::size_t>(t)];
    r.trial = static_cast<std::size_t>(t);
    try {
      if (t == 0) {
        r.hp = HyperParams::Defaults(learner);
      } else {
        Rng rng(HashSeed({options.seed, static_cast<std::uint64_t>(t)}));
        r.hp = hp_space.Draw(learner, rng);
      }
      r.cv_error = KFoldError(space, r.hp, data, options.folds, fold_seed, &r.fold_errors);
      if (!std::isfinite(r.cv_error)) {
        r.failure = "non-finite cross-validation error";
        r.cv_error = std::numeric_limits<double>::infinity();
      }
    } catch (const std::exception& e) {
      r.cv_error = std::numeric_limits<double>::infinity();
      r.failure = e.what();
    }
  }
  TuningResult result;
  result.trials = std::move(trials);
  result.best = result.trials[0].hp;
  result.best_trial = 0;
  for (const auto& r : result.trials) {
    if (r.cv_error < result.trials[result.best_trial].cv_error) {
      result.best_trial = r.trial;
      result.best = r.hp;
    }
  }
  return result;
}

void WriteTrialLog(std::ostream& out, const TuningResult& result) {
  out << "trial,params,fold_errors,mean_error,failure\n";
  for (const auto& r : result.trials) {
    std::string folds;
    for (double e : r.fold_errors) folds += (folds.empty() ? "" : ";") + FormatDouble(e);
    out << r.trial << ',' << CsvField(r.hp.Dump()) << ',' << CsvField(folds) << ','
        << FormatDouble(r.cv_error) << ',' << CsvField(r.failure) << '\n';
  }
}

}  // namespace cfgperf
