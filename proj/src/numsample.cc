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

#include "cfgperf/numsample.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfgperf/error.h"
#include "cfgperf/format.h"
#include "cfgperf/rng.h"

namespace cfgperf {
namespace {

void RequireNumeric(const ConfigurationSpace& space) {
  if (space.num_numeric() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "space '" + space.name() + "' has no numeric options");
  }
}

SampleSet MakeSample(std::string strategy) {
  SampleSet s;
  s.scope = SubSpace::kNumeric;
  s.provenance.strategy = std::move(strategy);
  return s;
}

// Maps unit-cube points onto the domains, merges duplicates and drops rows
// violating numeric-only constraints.
void Realize(const ConfigurationSpace& space,
             const std::vector<std::vector<double>>& unit_rows, SampleSet& sample) {
  const auto& opts = space.numeric_options();
  std::vector<std::vector<double>> rows;
  rows.reserve(unit_rows.size());
  for (const auto& u : unit_rows) {
    std::vector<double> r(opts.size());
    for (std::size_t k = 0; k < opts.size(); ++k) r[k] = Denormalize(opts[k], u[k]);
    rows.push_back(std::move(r));
  }
  const std::size_t designed = rows.size();
  Deduplicate(rows);
  if (rows.size() < designed) {
    sample.warnings.push_back(std::to_string(designed - rows.size()) +
                              " design points merged after snapping to domains");
  }
  for (auto& r : rows) {
    if (space.IsValidIn(r, SubSpace::kNumeric)) {
      sample.rows.push_back(std::move(r));
    } else {
      std::string text;
      for (double v : r) text += (text.empty() ? "" : ",") + FormatDouble(v);
      sample.warnings.push_back("design point (" + text + ") removed by constraints");
    }
  }
}

std::vector<std::vector<double>> ValidNumericRows(const ConfigurationSpace& space) {
  RequireNumeric(space);
  auto rows = EnumerateRows(space, SubSpace::kNumeric);
  if (rows.empty()) {
    throw Error(ErrorCode::kIncompatible,
                "space '" + space.name() + "' has no valid numeric configuration");
  }
  return rows;
}

}  // namespace

double Normalize(const NumericOption& option, double value) {
  return (value - option.min()) / (option.max() - option.min());
}

double SnapToDomain(const NumericOption& option, double value) {
  const auto& d = option.domain;
  auto it = std::lower_bound(d.begin(), d.end(), value);
  if (it == d.begin()) return d.front();
  if (it == d.end()) return d.back();
  const double hi = *it;
  const double lo = *(it - 1);
  return (hi - value < value - lo) ? hi : lo;
}

double Denormalize(const NumericOption& option, double unit) {
  return SnapToDomain(option, option.min() + unit * (option.max() - option.min()));
}

SampleSet SampleOneFactorAtATime(const ConfigurationSpace& space, int levels) {
  RequireNumeric(space);
  if (levels < 2) throw Error(ErrorCode::kInvalidArgument, "OFAT needs levels >= 2");
  const std::size_t k = space.num_numeric();
  std::vector<double> positions;
  for (int j = 0; j < levels; ++j) positions.push_back(static_cast<double>(j) / (levels - 1));
  // Drop the level nearest the center; the scan keeps the first (lower) on ties.
  std::size_t drop = 0;
  for (std::size_t j = 1; j < positions.size(); ++j) {
    if (std::fabs(positions[j] - 0.5) < std::fabs(positions[drop] - 0.5) - 1e-12) drop = j;
  }
  positions.erase(positions.begin() + static_cast<std::ptrdiff_t>(drop));

  std::vector<std::vector<double>> unit;
  unit.emplace_back(k, 0.5);
  for (std::size_t o = 0; o < k; ++o) {
    for (double p : positions) {
      std::vector<double> r(k, 0.5);
      r[o] = p;
      unit.push_back(std::move(r));
    }
  }
  SampleSet sample = MakeSample("OFAT");
  sample.provenance.parameters["levels"] = levels;
  Realize(space, unit, sample);
  return sample;
}

SampleSet SampleBoxBehnken(const ConfigurationSpace& space) {
  const std::size_t k = space.num_numeric();
  if (k < 3) {
    throw Error(ErrorCode::kInvalidArgument, "BBD requires >= 3 numeric options");
  }
  std::vector<std::vector<double>> unit;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (double va : {0.0, 1.0}) {
        for (double vb : {0.0, 1.0}) {
          std::vector<double> r(k, 0.5);
          r[a] = va;
          r[b] = vb;
          unit.push_back(std::move(r));
        }
      }
    }
  }
  unit.emplace_back(k, 0.5);
  SampleSet sample = MakeSample("BBD");
  Realize(space, unit, sample);
  return sample;
}

SampleSet SampleCentralComposite(const ConfigurationSpace& space, double alpha) {
  RequireNumeric(space);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "CCI alpha must lie in (0, 1)");
  }
  const std::size_t k = space.num_numeric();
  if (k > kMaxCciOptions) {
    throw Error(ErrorCode::kCapacityExceeded,
                "CCI with " + std::to_string(k) + " options exceeds 2^" +
                    std::to_string(kMaxCciOptions) + " corners");
  }
  std::vector<std::vector<double>> unit;
  const double lo = 0.5 - alpha / 2.0;
  const double hi = 0.5 + alpha / 2.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    std::vector<double> r(k);
    // First option most significant, low before high.
    for (std::size_t o = 0; o < k; ++o) r[o] = (m >> (k - 1 - o) & 1) ? hi : lo;
    unit.push_back(std::move(r));
  }
  for (std::size_t o = 0; o < k; ++o) {
    for (double v : {0.0, 1.0}) {
      std::vector<double> r(k, 0.5);
      r[o] = v;
      unit.push_back(std::move(r));
    }
  }
  unit.emplace_back(k, 0.5);
  SampleSet sample = MakeSample("CCI");
  sample.provenance.parameters["alpha"] = alpha;
  Realize(space, unit, sample);
  return sample;
}

SampleSet SamplePlackettBurman(const ConfigurationSpace& space, const PbdSeed& seed) {
  RequireNumeric(space);
  const std::size_t k = space.num_numeric();
  const std::size_t n = seed.vector.size();
  if (k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "PBD seed " + seed.id() + " too short for " + std::to_string(k) +
                    " numeric options");
  }
  std::vector<std::vector<double>> unit;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> r(k);
    for (std::size_t c = 0; c < k; ++c) {
      const int level = seed.vector[(c + n - i % n) % n];
      r[c] = static_cast<double>(level) / static_cast<double>(seed.levels - 1);
    }
    unit.push_back(std::move(r));
  }
  SampleSet sample = MakeSample("PBD(" + std::to_string(seed.configs) + "," +
                                std::to_string(seed.levels) + ")");
  sample.provenance.parameters["seed_id"] = seed.id();
  Realize(space, unit, sample);
  return sample;
}

ModelTerms ParseModelTerms(const std::string& name) {
  if (name == "linear") return ModelTerms::kLinear;
  if (name == "quadratic") return ModelTerms::kQuadratic;
  if (name == "full-quadratic") return ModelTerms::kFullQuadratic;
  throw Error(ErrorCode::kInvalidArgument, "unknown model terms '" + name + "'");
}

std::string ModelTermsName(ModelTerms terms) {
  switch (terms) {
    case ModelTerms::kLinear: return "linear";
    case ModelTerms::kQuadratic: return "quadratic";
    case ModelTerms::kFullQuadratic: return "full-quadratic";
  }
  return "";
}

std::size_t ModelColumns(std::size_t k, ModelTerms terms) {
  switch (terms) {
    case ModelTerms::kLinear: return 1 + k;
    case ModelTerms::kQuadratic: return 1 + 2 * k;
    case ModelTerms::kFullQuadratic: return 1 + 2 * k + k * (k - 1) / 2;
  }
  return 0;
}

Eigen::MatrixXd BuildModelMatrix(const std::vector<std::vector<double>>& unit_rows,
                                 ModelTerms terms) {
  const std::size_t k = unit_rows.empty() ? 0 : unit_rows.front().size();
  Eigen::MatrixXd X(static_cast<Eigen::Index>(unit_rows.size()),
                    static_cast<Eigen::Index>(ModelColumns(k, terms)));
  for (std::size_t r = 0; r < unit_rows.size(); ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    Eigen::Index c = 0;
    X(i, c++) = 1.0;
    std::vector<double> x(k);
    for (std::size_t o = 0; o < k; ++o) x[o] = 2.0 * unit_rows[r][o] - 1.0;
    for (std::size_t o = 0; o < k; ++o) X(i, c++) = x[o];
    if (terms == ModelTerms::kLinear) continue;
    for (std::size_t o = 0; o < k; ++o) X(i, c++) = x[o] * x[o];
    if (terms == ModelTerms::kQuadratic) continue;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) X(i, c++) = x[a] * x[b];
    }
  }
  return X;
}

SampleSet SampleDOptimal(const ConfigurationSpace& space, const DOptimalSpec& spec) {
  std::vector<std::vector<double>> rows = ValidNumericRows(space);
  SampleSet sample = MakeSample("DOD(" + std::to_string(spec.size) + ")");
  sample.provenance.seed = spec.seed;
  sample.provenance.requested_size = spec.size;
  sample.provenance.parameters["restarts"] = spec.restarts;
  sample.provenance.parameters["model_terms"] = ModelTermsName(spec.terms);
  if (spec.size > rows.size()) {
    throw Error(ErrorCode::kSizeTooLarge,
                "requested " + std::to_string(spec.size) + " numeric configurations, only " +
                    std::to_string(rows.size()) + " are valid");
  }
  if (rows.size() > spec.candidate_cap && spec.candidate_cap >= spec.size) {
    Rng rng(HashSeed({spec.seed, 0x63616e64ULL}));
    std::vector<std::size_t> keep = PartialShuffle(rows.size(), spec.candidate_cap, rng);
    std::sort(keep.begin(), keep.end());
    std::vector<std::vector<double>> subset;
    subset.reserve(keep.size());
    for (std::size_t i : keep) subset.push_back(std::move(rows[i]));
    sample.warnings.push_back("candidate set reduced from " + std::to_string(rows.size()) +
                              " to " + std::to_string(subset.size()) + " rows");
    rows = std::move(subset);
  }
  std::vector<std::vector<double>> unit(rows.size());
  const auto& opts = space.numeric_options();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    unit[r].resize(opts.size());
    for (std::size_t o = 0; o < opts.size(); ++o) unit[r][o] = Normalize(opts[o], rows[r][o]);
  }
  const Eigen::MatrixXd X = BuildModelMatrix(unit, spec.terms);
  DOptimalOptions options;
  options.size = spec.size;
  options.restarts = spec.restarts;
  options.seed = spec.seed;
  const DOptimalResult result = SelectDOptimal(X, options);
  for (std::size_t i : result.selected) sample.rows.push_back(rows[i]);
  sample.provenance.parameters["log_det"] = result.log_det;
  return sample;
}

SampleSet SampleRandomNumeric(const ConfigurationSpace& space, std::size_t size,
                              std::uint64_t seed) {
  const std::vector<std::vector<double>> rows = ValidNumericRows(space);
  if (size > rows.size()) {
    throw Error(ErrorCode::kSizeTooLarge,
                "requested " + std::to_string(size) + " numeric configurations, only " +
                    std::to_string(rows.size()) + " are valid");
  }
  Rng rng(seed);
  std::vector<std::size_t> picked = PartialShuffle(rows.size(), size, rng);
  std::sort(picked.begin(), picked.end());
  SampleSet sample = MakeSample("RN(" + std::to_string(size) + ")");
  sample.provenance.seed = seed;
  sample.provenance.requested_size = size;
  for (std::size_t i : picked) sample.rows.push_back(rows[i]);
  return sample;
}

SampleSet SampleNumeric(const ConfigurationSpace& space, const NumericStrategySpec& spec,
                        const std::vector<PbdSeed>* seeds) {
  using Kind = NumericStrategySpec::Kind;
  switch (spec.kind) {
    case Kind::kOfat:
      return SampleOneFactorAtATime(space, spec.levels);
    case Kind::kBoxBehnken:
      return SampleBoxBehnken(space);
    case Kind::kCentralComposite:
      return SampleCentralComposite(space, spec.alpha);
    case Kind::kPlackettBurman:
      return SamplePlackettBurman(
          space, FindPbdSeed(seeds ? *seeds : BuiltinPbdSeeds(), spec.pbd_seed));
    case Kind::kDOptimal: {
      DOptimalSpec d;
      d.size = spec.size;
      d.restarts = spec.restarts;
      d.seed = spec.seed;
      d.terms = spec.terms;
      return SampleDOptimal(space, d);
    }
    case Kind::kRandom:
      return SampleRandomNumeric(space, spec.size, spec.seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown numeric strategy");
}

}  // namespace cfgperf
