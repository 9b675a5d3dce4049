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

#include "cfgperf/binsample.h"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "cfgperf/error.h"
#include "cfgperf/rng.h"

namespace cfgperf {
namespace {

struct BinaryRows {
  std::vector<std::vector<double>> rows;
  std::vector<std::uint64_t> masks;  // bit i = option i enabled
};

BinaryRows ValidBinaryRows(const ConfigurationSpace& space) {
  if (space.num_binary() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "space has no binary options");
  }
  if (space.num_binary() > 63) {
    throw Error(ErrorCode::kCapacityExceeded, "more than 63 binary options");
  }
  BinaryRows out;
  out.rows = EnumerateRows(space, SubSpace::kBinary);
  out.masks.reserve(out.rows.size());
  for (const auto& r : out.rows) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] > 0.5) m |= std::uint64_t{1} << i;
    }
    out.masks.push_back(m);
  }
  if (out.rows.empty()) {
    throw Error(ErrorCode::kIncompatible,
                "space '" + space.name() + "' has no valid binary configuration");
  }
  return out;
}

std::string TupleName(const ConfigurationSpace& space, const std::vector<int>& tuple) {
  std::string s = "(";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    s += (k ? "," : "") + space.option_name(static_cast<std::size_t>(tuple[k]));
  }
  return s + ")";
}

SampleSet MakeSample(std::string strategy) {
  SampleSet s;
  s.scope = SubSpace::kBinary;
  s.provenance.strategy = std::move(strategy);
  return s;
}

}  // namespace

SampleSet SampleOptionWise(const ConfigurationSpace& space) {
  const BinaryRows valid = ValidBinaryRows(space);
  SampleSet sample = MakeSample("OW");
  const std::size_t n = space.num_binary();
  for (std::size_t opt = 0; opt < n; ++opt) {
    const std::uint64_t bit = std::uint64_t{1} << opt;
    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < valid.masks.size(); ++r) {
      if (!(valid.masks[r] & bit)) continue;
      if (!best || std::popcount(valid.masks[r]) < std::popcount(valid.masks[*best])) {
        best = r;
      }
    }
    if (!best) {
      sample.warnings.push_back("dead option '" + space.option_name(opt) +
                                "' skipped: no valid configuration enables it");
      continue;
    }
    sample.rows.push_back(valid.rows[*best]);
  }
  Deduplicate(sample.rows);
  return sample;
}

SampleSet SampleNegativeOptionWise(const ConfigurationSpace& space) {
  const BinaryRows valid = ValidBinaryRows(space);
  SampleSet sample = MakeSample("NegOW");
  const std::size_t n = space.num_binary();
  for (std::size_t opt = 0; opt < n; ++opt) {
    const std::uint64_t bit = std::uint64_t{1} << opt;
    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < valid.masks.size(); ++r) {
      if (valid.masks[r] & bit) continue;
      if (!best || std::popcount(valid.masks[r]) > std::popcount(valid.masks[*best])) {
        best = r;
      }
    }
    if (!best) {
      sample.warnings.push_back("mandatory option '" + space.option_name(opt) +
                                "' skipped: it cannot be disabled");
      continue;
    }
    sample.rows.push_back(valid.rows[*best]);
  }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::optional<std::size_t> fullest;
  for (std::size_t r = 0; r < valid.masks.size(); ++r) {
    if (!fullest || std::popcount(valid.masks[r]) > std::popcount(valid.masks[*fullest])) {
      fullest = r;
    }
  }
  if (valid.masks[*fullest] != all) {
    sample.warnings.push_back(
        "all-enabled configuration is invalid; using the valid configuration "
        "with the most enabled options instead");
  }
  sample.rows.push_back(valid.rows[*fullest]);
  Deduplicate(sample.rows);
  return sample;
}

SampleSet SampleTWise(const ConfigurationSpace& space, int t) {
  const int n = static_cast<int>(space.num_binary());
  if (t < 2 || t > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "t-wise sampling needs 2 <= t <= " + std::to_string(n));
  }
  const BinaryRows valid = ValidBinaryRows(space);
  // Stable order by popcount: the first superset found is minimal and, among
  // equals, earliest in enumeration order.
  std::vector<std::size_t> order(valid.masks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(valid.masks[a]) < std::popcount(valid.masks[b]);
  });

  SampleSet sample = MakeSample("T" + std::to_string(t));
  sample.provenance.parameters["t"] = t;
  std::vector<int> tuple(static_cast<std::size_t>(t));
  for (int k = 0; k < t; ++k) tuple[static_cast<std::size_t>(k)] = k;
  for (;;) {
    std::uint64_t want = 0;
    for (int o : tuple) want |= std::uint64_t{1} << o;
    bool found = false;
    for (std::size_t r : order) {
      if ((valid.masks[r] & want) == want) {
        sample.rows.push_back(valid.rows[r]);
        found = true;
        break;
      }
    }
    if (!found) {
      sample.warnings.push_back("unsatisfiable tuple " + TupleName(space, tuple) +
                                " skipped");
    }
    // Next combination in lexicographic order.
    int k = t - 1;
    while (k >= 0 && tuple[static_cast<std::size_t>(k)] == n - t + k) --k;
    if (k < 0) break;
    ++tuple[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < t; ++j) {
      tuple[static_cast<std::size_t>(j)] = tuple[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  Deduplicate(sample.rows);
  return sample;
}

SampleSet SampleRandomBinary(const ConfigurationSpace& space, std::size_t size,
                             std::uint64_t seed) {
  const BinaryRows valid = ValidBinaryRows(space);
  if (size > valid.rows.size()) {
    throw Error(ErrorCode::kSizeTooLarge,
                "requested " + std::to_string(size) + " binary configurations, only " +
                    std::to_string(valid.rows.size()) + " are valid");
  }
  Rng rng(seed);
  std::vector<std::size_t> picked = PartialShuffle(valid.rows.size(), size, rng);
  std::sort(picked.begin(), picked.end());
  SampleSet sample = MakeSample("RB");
  sample.provenance.seed = seed;
  sample.provenance.requested_size = size;
  for (std::size_t i : picked) sample.rows.push_back(valid.rows[i]);
  return sample;
}

SampleSet SampleBinary(const ConfigurationSpace& space, const BinaryStrategySpec& spec) {
  switch (spec.kind) {
    case BinaryStrategySpec::Kind::kOptionWise:
      return SampleOptionWise(space);
    case BinaryStrategySpec::Kind::kNegativeOptionWise:
      return SampleNegativeOptionWise(space);
    case BinaryStrategySpec::Kind::kTWise:
      return SampleTWise(space, spec.t);
    case BinaryStrategySpec::Kind::kRandom:
      return SampleRandomBinary(space, spec.size, spec.seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown binary strategy");
}

}  // namespace cfgperf
