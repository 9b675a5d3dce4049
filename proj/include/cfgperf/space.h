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

#ifndef CFGPERF_SPACE_H_
#define CFGPERF_SPACE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cfgperf/expression.h"

namespace cfgperf {

struct BinaryOption {
  std::string name;
};

// Finite, strictly ascending value domain with at least two members.
struct NumericOption {
  std::string name;
  std::vector<double> domain;

  double min() const { return domain.front(); }
  double max() const { return domain.back(); }
  // Index of `value` in the domain, if it is a member.
  std::optional<std::size_t> IndexOf(double value) const;
};

// Which slice of the option vector a row covers. Binary rows hold the binary
// options in declared order, numeric rows the numeric options, full rows both
// (binary first).
enum class SubSpace { kBinary, kNumeric, kFull };

// A total assignment over all options of a space, binary options first.
struct Configuration {
  std::vector<double> values;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept;
  std::size_t operator()(std::span<const double> values) const noexcept;
};

class Constraint {
 public:
  Constraint(Expression expr, std::size_t num_binary);

  const std::string& text() const { return expr_.text(); }
  const Expression& expression() const { return expr_; }
  // Smallest sub-space containing every referenced option.
  SubSpace scope() const { return scope_; }

 private:
  Expression expr_;
  SubSpace scope_;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class ConfigurationSpace {
 public:
  // Validates names and domains and parses every constraint. Throws
  // Error(kDuplicateName / kInvalidDomain / kSyntax / kUnknownOption).
  ConfigurationSpace(std::string name, std::vector<BinaryOption> binary,
                     std::vector<NumericOption> numeric,
                     std::vector<std::string> constraints);

  const std::string& name() const { return name_; }
  std::size_t num_binary() const { return binary_.size(); }
  std::size_t num_numeric() const { return numeric_.size(); }
  std::size_t num_options() const { return binary_.size() + numeric_.size(); }

  const std::vector<BinaryOption>& binary_options() const { return binary_; }
  const std::vector<NumericOption>& numeric_options() const { return numeric_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  // Global index: binary options 0..B-1, numeric options B..B+N-1.
  const std::string& option_name(std::size_t index) const;
  bool is_binary(std::size_t index) const { return index < binary_.size(); }
  std::optional<std::size_t> IndexOf(std::string_view name) const;
  std::vector<std::string> OptionNames() const;

  std::size_t Width(SubSpace scope) const;

  // Throws Error(kPartialAssignment) when the width is wrong and
  // Error(kInvalidArgument) when a value is outside its option's domain.
  void CheckMembership(std::span<const double> row, SubSpace scope) const;

  // Full validity: every constraint holds.
  bool IsValid(const Configuration& config) const;
  // Validity of a sub-space row against the constraints lying entirely in
  // that sub-space. Mixed constraints are deferred to full configurations.
  bool IsValidIn(std::span<const double> row, SubSpace scope) const;

  // Raw (unconstrained) number of combinations; nullopt on 64-bit overflow.
  std::optional<std::uint64_t> RawCount(SubSpace scope) const;

  // Stable text describing options and domains, used to detect that a
  // configuration or predictor belongs to this space.
  std::string Fingerprint() const;

  friend bool operator==(const ConfigurationSpace& a, const ConfigurationSpace& b);

 private:
  bool Satisfies(std::span<const double> row, SubSpace scope) const;

  std::string name_;
  std::vector<BinaryOption> binary_;
  std::vector<NumericOption> numeric_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Variability-model document (JSON):
//   {"name": ..., "binary": [names],
//    "numeric": [{"name", "values": [...]} | {"name", "min", "max", "step"}],
//    "constraints": [expression strings]}
ConfigurationSpace ParseSpace(std::string_view json_text);
ConfigurationSpace LoadSpace(const std::string& path);
std::string SerializeSpace(const ConfigurationSpace& space);

// Streams the valid rows of one sub-space in lexicographic order of the
// declared options (first option most significant, domains ascending).
// Single consumer.
class ConfigurationEnumerator {
 public:
  ConfigurationEnumerator(const ConfigurationSpace& space,
                          SubSpace scope = SubSpace::kFull,
                          std::uint64_t cap = kDefaultEnumerationCap);

  // Writes the next valid row and returns true, or returns false when done.
  bool Next(std::vector<double>& row);

 private:
  const ConfigurationSpace& space_;
  SubSpace scope_;
  std::vector<const std::vector<double>*> domains_;
  std::vector<std::size_t> digits_;
  bool done_ = false;
};

std::vector<std::vector<double>> EnumerateRows(
    const ConfigurationSpace& space, SubSpace scope,
    std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Configuration> EnumerateValid(
    const ConfigurationSpace& space, std::uint64_t cap = kDefaultEnumerationCap);
std::uint64_t CountValid(const ConfigurationSpace& space,
                         SubSpace scope = SubSpace::kFull,
                         std::uint64_t cap = kDefaultEnumerationCap);

// Concatenates a binary row and a numeric row into a full configuration.
Configuration Combine(std::span<const double> binary_row,
                      std::span<const double> numeric_row);

}  // namespace cfgperf

#endif  // CFGPERF_SPACE_H_
