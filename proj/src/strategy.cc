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

#include "cfgperf/strategy.h"

#include <charconv>
#include <regex>

#include "cfgperf/error.h"

namespace cfgperf {
namespace {

std::size_t ParseCount(const std::string& text, std::string_view name) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad size in strategy '" + std::string(name) + "'");
  }
  return v;
}

std::optional<BinaryStrategySpec> ParseDeterministicBinary(const std::string& s) {
  BinaryStrategySpec spec;
  if (s == "OW") {
    spec.kind = BinaryStrategySpec::Kind::kOptionWise;
    return spec;
  }
  if (s == "NegOW") {
    spec.kind = BinaryStrategySpec::Kind::kNegativeOptionWise;
    return spec;
  }
  static const std::regex tw(R"(T([0-9]+))");
  std::smatch m;
  if (std::regex_match(s, m, tw)) {
    spec.kind = BinaryStrategySpec::Kind::kTWise;
    spec.t = std::stoi(m[1]);
    if (spec.t < 2) return std::nullopt;
    return spec;
  }
  return std::nullopt;
}

SampleSet EmptyRowSample(SubSpace scope, const std::string& name) {
  SampleSet s;
  s.scope = scope;
  s.provenance.strategy = name;
  s.rows.push_back({});
  s.warnings.push_back("no options in this sub-space; using the single empty row");
  return s;
}

}  // namespace

BinaryStrategy ParseBinaryStrategy(std::string_view name) {
  const std::string s(name);
  BinaryStrategy out;
  out.name = s;
  if (auto det = ParseDeterministicBinary(s)) {
    out.spec = *det;
    return out;
  }
  static const std::regex rb_base(R"(RB\(_,(.+)\))");
  static const std::regex rb_size(R"(RB\(([0-9]+)\))");
  std::smatch m;
  if (std::regex_match(s, m, rb_base)) {
    out.spec.kind = BinaryStrategySpec::Kind::kRandom;
    out.size_from = ParseDeterministicBinary(m[1]);
    if (out.size_from) return out;
  } else if (std::regex_match(s, m, rb_size)) {
    out.spec.kind = BinaryStrategySpec::Kind::kRandom;
    out.spec.size = ParseCount(m[1], name);
    return out;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown binary strategy '" + s + "'");
}

NumericStrategy ParseNumericStrategy(std::string_view name) {
  const std::string s(name);
  NumericStrategy out;
  out.name = s;
  using Kind = NumericStrategySpec::Kind;
  static const std::regex pbd(R"(PBD\(([0-9]+),([0-9]+)\))");
  static const std::regex sized(R"((DOD|RN)\(([0-9]+)\))");
  std::smatch m;
  if (s == "OFAT") {
    out.spec.kind = Kind::kOfat;
  } else if (s == "BBD") {
    out.spec.kind = Kind::kBoxBehnken;
  } else if (s == "CCI") {
    out.spec.kind = Kind::kCentralComposite;
  } else if (std::regex_match(s, m, pbd)) {
    out.spec.kind = Kind::kPlackettBurman;
    out.spec.pbd_seed = m[1].str() + "x" + m[2].str();
  } else if (std::regex_match(s, m, sized)) {
    out.spec.kind = m[1] == "DOD" ? Kind::kDOptimal : Kind::kRandom;
    out.spec.size = ParseCount(m[2], name);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown numeric strategy '" + s + "'");
  }
  return out;
}

SampleSet DrawBinary(const ConfigurationSpace& space, const BinaryStrategy& strategy,
                     std::uint64_t seed) {
  if (space.num_binary() == 0) return EmptyRowSample(SubSpace::kBinary, strategy.name);
  BinaryStrategySpec spec = strategy.spec;
  spec.seed = seed;
  if (strategy.size_from) spec.size = SampleBinary(space, *strategy.size_from).size();
  SampleSet s = SampleBinary(space, spec);
  s.provenance.strategy = strategy.name;
  return s;
}

SampleSet DrawNumeric(const ConfigurationSpace& space, const NumericStrategy& strategy,
                      std::uint64_t seed, const NumericSettings& settings) {
  if (space.num_numeric() == 0) return EmptyRowSample(SubSpace::kNumeric, strategy.name);
  NumericStrategySpec spec = strategy.spec;
  spec.seed = seed;
  spec.levels = settings.ofat_levels;
  spec.alpha = settings.cci_alpha;
  spec.restarts = settings.dod_restarts;
  spec.terms = settings.dod_terms;
  SampleSet s = SampleNumeric(space, spec, settings.pbd_seeds);
  s.provenance.strategy = strategy.name;
  return s;
}

}  // namespace cfgperf
