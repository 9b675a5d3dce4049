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

#include "cfgperf/synthetic.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "cfgperf/error.h"
#include "cfgperf/format.h"
#include "cfgperf/rng.h"

namespace cfgperf {
namespace {

constexpr int kMaxAttempts = 100;

template <typename T>
T Get(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::string TermKey(const MrTerm& t) {
  std::string k;
  for (const auto& f : t.factors) k += std::to_string(f.option) + "^" + std::to_string(f.power) + ";";
  return k;
}

}  // namespace

SyntheticSystemSpec SyntheticSystemSpec::FromJson(const nlohmann::json& j) {
  SyntheticSystemSpec s;
  try {
    s.space = j.at("space");
    s.binary_main_effects = Get<std::size_t>(j, "binary_main_effects", 0);
    s.numeric_main_effects = Get<std::size_t>(j, "numeric_main_effects", 0);
    s.pairwise_interactions = Get<std::size_t>(j, "pairwise_interactions", 0);
    s.higher_order_interactions = Get<std::size_t>(j, "higher_order_interactions", 0);
    s.higher_order_size = Get<std::size_t>(j, "higher_order_size", 3);
    s.min_degree = Get<int>(j, "min_degree", 1);
    s.degree_cap = Get<int>(j, "degree_cap", 2);
    s.interaction_pool = Get<std::string>(j, "interaction_pool", "all");
    if (j.contains("coefficient_range")) {
      const auto r = j.at("coefficient_range").get<std::vector<double>>();
      if (r.size() != 2) throw Error(ErrorCode::kInvalidData, "coefficient_range needs 2 values");
      s.coefficient_min = r[0];
      s.coefficient_max = r[1];
    }
    s.negative_fraction = Get<double>(j, "negative_fraction", 0.0);
    s.intercept = Get<double>(j, "intercept", 0.0);
    s.noise = Get<double>(j, "noise", 0.0);
    s.seed = Get<std::uint64_t>(j, "seed", 0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidData, std::string("synthetic spec: ") + e.what());
  }
  return s;
}

nlohmann::json SyntheticSystemSpec::ToJson() const {
  return {{"space", space},
          {"binary_main_effects", binary_main_effects},
          {"numeric_main_effects", numeric_main_effects},
          {"pairwise_interactions", pairwise_interactions},
          {"higher_order_interactions", higher_order_interactions},
          {"higher_order_size", higher_order_size},
          {"min_degree", min_degree},
          {"degree_cap", degree_cap},
          {"interaction_pool", interaction_pool},
          {"coefficient_range", {coefficient_min, coefficient_max}},
          {"negative_fraction", negative_fraction},
          {"intercept", intercept},
          {"noise", noise},
          {"seed", seed}};
}

double GroundTruthModel::Evaluate(std::span<const double> values) const {
  double s = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    double v = coefficients[k];
    for (const auto& f : terms[k].factors) v *= std::pow(values[f.option], f.power);
    s += v;
  }
  return s;
}

std::string GroundTruthModel::Formula() const {
  std::string s;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double c = coefficients[k];
    if (s.empty()) {
      s = FormatDouble(c);
    } else {
      s += c < 0 ? " - " : " + ";
      s += FormatDouble(std::fabs(c));
    }
    if (!terms[k].is_intercept()) s += "*" + terms[k].Name(option_names);
  }
  return s;
}

nlohmann::json GroundTruthModel::ToJson() const {
  nlohmann::json terms_json = nlohmann::json::array();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    terms_json.push_back({{"term", terms[k].Name(option_names)}, {"coefficient", coefficients[k]}});
  }
  return {{"formula", Formula()}, {"terms", terms_json}};
}

SyntheticSystem GenerateSyntheticSystem(const SyntheticSystemSpec& spec) {
  ConfigurationSpace space = ParseSpace(spec.space.dump());
  const std::size_t nb = space.num_binary();
  const std::size_t d = space.num_options();
  if (spec.degree_cap < 1 || spec.degree_cap > 4 || spec.min_degree < 1 ||
      spec.min_degree > spec.degree_cap) {
    throw Error(ErrorCode::kInvalidArgument, "need 1 <= min_degree <= degree_cap <= 4");
  }
  if (spec.binary_main_effects > nb || spec.numeric_main_effects > space.num_numeric()) {
    throw Error(ErrorCode::kInvalidArgument, "more main effects than options");
  }
  if (!(spec.coefficient_min > 0) || spec.coefficient_max < spec.coefficient_min) {
    throw Error(ErrorCode::kInvalidArgument, "coefficient range must satisfy 0 < min <= max");
  }
  if (spec.noise < 0) throw Error(ErrorCode::kInvalidArgument, "noise must be >= 0");
  if (spec.interaction_pool != "all" && spec.interaction_pool != "binary") {
    throw Error(ErrorCode::kInvalidArgument, "interaction_pool must be all or binary");
  }
  Rng rng(HashSeed({spec.seed, 0x7465726dULL}));
  auto power_for = [&](std::size_t option) {
    if (option < nb) return 1;
    return spec.min_degree +
           static_cast<int>(rng.UniformBelow(
               static_cast<std::uint64_t>(spec.degree_cap - spec.min_degree + 1)));
  };

  std::vector<MrTerm> terms = {MrTerm{}};
  std::set<std::string> keys;
  for (std::size_t o : PartialShuffle(nb, spec.binary_main_effects, rng)) {
    terms.push_back(MrTerm{{{MrFactor::Kind::kPower, o, 0, 1}}});
  }
  for (std::size_t k : PartialShuffle(space.num_numeric(), spec.numeric_main_effects, rng)) {
    const std::size_t o = nb + k;
    terms.push_back(MrTerm{{{MrFactor::Kind::kPower, o, 0, power_for(o)}}});
  }
  for (const auto& t : terms) keys.insert(TermKey(t));
  const std::size_t pool = spec.interaction_pool == "binary" ? nb : d;
  auto add_interactions = [&](std::size_t count, std::size_t size) {
    if (size > pool) {
      throw Error(ErrorCode::kInvalidArgument, "interaction larger than the option pool");
    }
    std::size_t added = 0;
    for (int attempt = 0; added < count; ++attempt) {
      if (attempt > 1000) {
        throw Error(ErrorCode::kInvalidArgument, "cannot draw enough distinct interactions");
      }
      std::vector<std::size_t> opts = PartialShuffle(pool, size, rng);
      std::sort(opts.begin(), opts.end());
      MrTerm t;
      for (std::size_t o : opts) t.factors.push_back({MrFactor::Kind::kPower, o, 0, power_for(o)});
      if (keys.insert(TermKey(t)).second) {
        terms.push_back(std::move(t));
        ++added;
      }
    }
  };
  add_interactions(spec.pairwise_interactions, 2);
  add_interactions(spec.higher_order_interactions, spec.higher_order_size);

  const std::vector<Configuration> configs = EnumerateValid(space);
  if (configs.empty()) throw Error(ErrorCode::kInvalidArgument, "space has no valid configuration");

  GroundTruthModel model;
  model.option_names = space.OptionNames();
  model.terms = terms;
  bool positive = false;
  for (int attempt = 0; attempt < kMaxAttempts && !positive; ++attempt) {
    model.coefficients.assign(terms.size(), 0.0);
    for (std::size_t k = 1; k < terms.size(); ++k) {
      double c = spec.coefficient_min +
                 rng.UniformDouble() * (spec.coefficient_max - spec.coefficient_min);
      if (rng.UniformDouble() < spec.negative_fraction) c = -c;
      for (const auto& f : terms[k].factors) {
        if (f.option < nb) continue;
        const auto& dom = space.numeric_options()[f.option - nb].domain;
        const double scale = std::max(std::fabs(dom.front()), std::fabs(dom.back()));
        if (scale > 0) c /= std::pow(scale, f.power);
      }
      model.coefficients[k] = c;
    }
    model.coefficients[0] =
        spec.intercept != 0.0
            ? spec.intercept
            : static_cast<double>(terms.size()) *
                  (spec.coefficient_min +
                   rng.UniformDouble() * (spec.coefficient_max - spec.coefficient_min));
    positive = true;
    for (const auto& c : configs) {
      if (!(model.Evaluate(c.values) > 0)) {
        positive = false;
        break;
      }
    }
  }
  if (!positive) {
    throw Error(ErrorCode::kNumerical,
                "could not draw a positive ground-truth model in 100 attempts");
  }

  MeasurementTable table(space.name(), "synthetic");
  Rng noise(HashSeed({spec.seed, 0x6e6f6973ULL}));
  for (const auto& c : configs) {
    const double truth = model.Evaluate(c.values);
    double v = truth;
    if (spec.noise > 0) {
      v = truth * (1.0 + spec.noise * noise.Normal());
      v = std::max(v, 1e-3 * truth);
    }
    table.Add(c, v);
  }
  return SyntheticSystem{std::move(space), std::move(model), std::move(table)};
}

nlohmann::json GridSpaceJson(const std::string& name, std::size_t binary,
                             std::size_t numeric, std::size_t levels) {
  nlohmann::json doc;
  doc["name"] = name;
  std::vector<std::string> b;
  for (std::size_t i = 1; i <= binary; ++i) b.push_back("b" + std::to_string(i));
  doc["binary"] = b;
  nlohmann::json nums = nlohmann::json::array();
  for (std::size_t i = 1; i <= numeric; ++i) {
    std::vector<double> values;
    for (std::size_t v = 1; v <= levels; ++v) values.push_back(static_cast<double>(v));
    nums.push_back({{"name", "n" + std::to_string(i)}, {"values", values}});
  }
  doc["numeric"] = nums;
  doc["constraints"] = nlohmann::json::array();
  return doc;
}

}  // namespace cfgperf
