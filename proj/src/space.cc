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

#include "cfgperf/space.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cfgperf/error.h"
#include "cfgperf/format.h"
#include "json.hpp"

namespace cfgperf {

using nlohmann::json;

std::optional<std::size_t> NumericOption::IndexOf(double value) const {
  const double tol = 1e-9 * (1.0 + std::fabs(value));
  auto it = std::lower_bound(domain.begin(), domain.end(), value - tol);
  if (it != domain.end() && std::fabs(*it - value) <= tol) {
    return static_cast<std::size_t>(it - domain.begin());
  }
  return std::nullopt;
}

std::size_t ConfigurationHash::operator()(
    std::span<const double> values) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (double v : values) {
    // +0.0 and -0.0 must hash alike since they compare equal.
    const std::size_t x = std::hash<double>{}(v == 0.0 ? 0.0 : v);
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept {
  return (*this)(std::span<const double>(c.values));
}

Constraint::Constraint(Expression expr, std::size_t num_binary)
    : expr_(std::move(expr)) {
  const auto& refs = expr_.referenced_options();
  const bool any_binary = std::any_of(
      refs.begin(), refs.end(), [&](std::size_t i) { return i < num_binary; });
  const bool any_numeric = std::any_of(
      refs.begin(), refs.end(), [&](std::size_t i) { return i >= num_binary; });
  if (any_binary && any_numeric) {
    scope_ = SubSpace::kFull;
  } else if (any_numeric) {
    scope_ = SubSpace::kNumeric;
  } else {
    scope_ = SubSpace::kBinary;
  }
}

ConfigurationSpace::ConfigurationSpace(std::string name,
                                       std::vector<BinaryOption> binary,
                                       std::vector<NumericOption> numeric,
                                       std::vector<std::string> constraints)
    : name_(std::move(name)), binary_(std::move(binary)), numeric_(std::move(numeric)) {
  if (binary_.empty() && numeric_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "space declares no options");
  }
  auto add_name = [&](const std::string& n, std::size_t idx) {
    if (n.empty()) throw Error(ErrorCode::kSyntax, "empty option name");
    if (!index_.emplace(n, idx).second) {
      throw Error(ErrorCode::kDuplicateName, "duplicate option name '" + n + "'");
    }
  };
  for (std::size_t i = 0; i < binary_.size(); ++i) add_name(binary_[i].name, i);
  for (std::size_t j = 0; j < numeric_.size(); ++j) {
    const auto& opt = numeric_[j];
    add_name(opt.name, binary_.size() + j);
    if (opt.domain.size() < 2) {
      throw Error(ErrorCode::kInvalidDomain,
                  "numeric option '" + opt.name + "' needs at least two values");
    }
    for (std::size_t k = 1; k < opt.domain.size(); ++k) {
      if (!(opt.domain[k] > opt.domain[k - 1])) {
        throw Error(ErrorCode::kInvalidDomain,
                    "domain of '" + opt.name + "' is not strictly ascending");
      }
    }
  }
  const OptionResolver resolve =
      [this](std::string_view n) -> std::optional<std::pair<std::size_t, bool>> {
    auto idx = IndexOf(n);
    if (!idx) return std::nullopt;
    return std::make_pair(*idx, is_binary(*idx));
  };
  for (const auto& text : constraints) {
    constraints_.emplace_back(Expression::Parse(text, resolve), binary_.size());
  }
}

const std::string& ConfigurationSpace::option_name(std::size_t index) const {
  return index < binary_.size() ? binary_[index].name
                                : numeric_.at(index - binary_.size()).name;
}

std::optional<std::size_t> ConfigurationSpace::IndexOf(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ConfigurationSpace::OptionNames() const {
  std::vector<std::string> names;
  names.reserve(num_options());
  for (const auto& b : binary_) names.push_back(b.name);
  for (const auto& n : numeric_) names.push_back(n.name);
  return names;
}

std::size_t ConfigurationSpace::Width(SubSpace scope) const {
  switch (scope) {
    case SubSpace::kBinary: return binary_.size();
    case SubSpace::kNumeric: return numeric_.size();
    case SubSpace::kFull: return num_options();
  }
  return 0;
}

void ConfigurationSpace::CheckMembership(std::span<const double> row,
                                         SubSpace scope) const {
  if (row.size() != Width(scope)) {
    throw Error(ErrorCode::kPartialAssignment,
                "configuration assigns " + std::to_string(row.size()) +
                    " values, space '" + name_ + "' expects " +
                    std::to_string(Width(scope)));
  }
  const std::size_t offset = scope == SubSpace::kNumeric ? binary_.size() : 0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    const std::size_t g = k + offset;
    if (is_binary(g)) {
      if (row[k] != 0.0 && row[k] != 1.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "binary option '" + option_name(g) + "' has value " +
                        FormatDouble(row[k]));
      }
    } else if (!numeric_[g - binary_.size()].IndexOf(row[k])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "value " + FormatDouble(row[k]) + " is not in the domain of '" +
                      option_name(g) + "'");
    }
  }
}

bool ConfigurationSpace::Satisfies(std::span<const double> row,
                                   SubSpace scope) const {
  const std::size_t offset = scope == SubSpace::kNumeric ? binary_.size() : 0;
  for (const auto& c : constraints_) {
    if (scope != SubSpace::kFull && c.scope() != scope) continue;
    if (!c.expression().Evaluate(row, offset)) return false;
  }
  return true;
}

bool ConfigurationSpace::IsValid(const Configuration& config) const {
  CheckMembership(config.values, SubSpace::kFull);
  return Satisfies(config.values, SubSpace::kFull);
}

bool ConfigurationSpace::IsValidIn(std::span<const double> row,
                                   SubSpace scope) const {
  CheckMembership(row, scope);
  return Satisfies(row, scope);
}

std::optional<std::uint64_t> ConfigurationSpace::RawCount(SubSpace scope) const {
  std::uint64_t total = 1;
  auto mul = [&](std::uint64_t k) {
    if (total > UINT64_MAX / k) return false;
    total *= k;
    return true;
  };
  if (scope != SubSpace::kNumeric) {
    for (std::size_t i = 0; i < binary_.size(); ++i) {
      if (!mul(2)) return std::nullopt;
    }
  }
  if (scope != SubSpace::kBinary) {
    for (const auto& n : numeric_) {
      if (!mul(n.domain.size())) return std::nullopt;
    }
  }
  return total;
}

std::string ConfigurationSpace::Fingerprint() const {
  std::string fp;
  for (const auto& b : binary_) fp += "b:" + b.name + ";";
  for (const auto& n : numeric_) {
    fp += "n:" + n.name + "[";
    for (double v : n.domain) fp += FormatDouble(v) + ",";
    fp += "];";
  }
  return fp;
}

bool operator==(const ConfigurationSpace& a, const ConfigurationSpace& b) {
  if (a.name_ != b.name_ || a.Fingerprint() != b.Fingerprint() ||
      a.constraints_.size() != b.constraints_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.constraints_.size(); ++i) {
    if (a.constraints_[i].text() != b.constraints_[i].text()) return false;
  }
  return true;
}

namespace {

std::vector<double> ExpandRange(const std::string& name, double lo, double hi,
                                double step) {
  if (!(step > 0.0) || !(hi > lo)) {
    throw Error(ErrorCode::kInvalidDomain,
                "numeric option '" + name + "' needs min < max and step > 0");
  }
  std::vector<double> values;
  const double span = (hi - lo) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    // Round away accumulated binary noise (e.g. 0.1 steps).
    const double v = lo + static_cast<double>(i) * step;
    values.push_back(ParseDouble(FormatDouble(std::round(v * 1e12) / 1e12)));
  }
  return values;
}

}  // namespace

ConfigurationSpace ParseSpace(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSyntax, "variability model: byte " +
                                        std::to_string(e.byte) + ": " + e.what());
  }
  try {
    if (!doc.is_object()) {
      throw Error(ErrorCode::kSyntax, "variability model must be a JSON object");
    }
    std::vector<BinaryOption> binary;
    std::vector<NumericOption> numeric;
    std::vector<std::string> constraints;
    for (const auto& b : doc.value("binary", json::array())) {
      binary.push_back({b.get<std::string>()});
    }
    for (const auto& n : doc.value("numeric", json::array())) {
      NumericOption opt;
      opt.name = n.at("name").get<std::string>();
      if (n.contains("values")) {
        opt.domain = n.at("values").get<std::vector<double>>();
        if (opt.domain.empty()) {
          throw Error(ErrorCode::kInvalidDomain,
                      "numeric option '" + opt.name + "' has an empty domain");
        }
      } else if (n.contains("min") && n.contains("max")) {
        opt.domain = ExpandRange(opt.name, n.at("min").get<double>(),
                                 n.at("max").get<double>(), n.value("step", 1.0));
      } else {
        throw Error(ErrorCode::kInvalidDomain,
                    "numeric option '" + opt.name + "' has no values or min/max");
      }
      numeric.push_back(std::move(opt));
    }
    for (const auto& c : doc.value("constraints", json::array())) {
      constraints.push_back(c.get<std::string>());
    }
    return ConfigurationSpace(doc.value("name", std::string("system")),
                              std::move(binary), std::move(numeric),
                              std::move(constraints));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSyntax, std::string("variability model: ") + e.what());
  }
}

ConfigurationSpace LoadSpace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open variability model " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseSpace(ss.str());
}

std::string SerializeSpace(const ConfigurationSpace& space) {
  json doc;
  doc["name"] = space.name();
  doc["binary"] = json::array();
  for (const auto& b : space.binary_options()) doc["binary"].push_back(b.name);
  doc["numeric"] = json::array();
  for (const auto& n : space.numeric_options()) {
    doc["numeric"].push_back({{"name", n.name}, {"values", n.domain}});
  }
  doc["constraints"] = json::array();
  for (const auto& c : space.constraints()) doc["constraints"].push_back(c.text());
  return doc.dump(2) + "\n";
}

ConfigurationEnumerator::ConfigurationEnumerator(const ConfigurationSpace& space,
                                                 SubSpace scope,
                                                 std::uint64_t cap)
    : space_(space), scope_(scope) {
  const auto raw = space.RawCount(scope);
  if (!raw || *raw > cap) {
    throw Error(ErrorCode::kCapacityExceeded,
                "space '" + space.name() + "' has more than " +
                    std::to_string(cap) + " raw combinations");
  }
  static const std::vector<double> kBinaryDomain = {0.0, 1.0};
  if (scope != SubSpace::kNumeric) {
    for (std::size_t i = 0; i < space.num_binary(); ++i) {
      domains_.push_back(&kBinaryDomain);
    }
  }
  if (scope != SubSpace::kBinary) {
    for (const auto& n : space.numeric_options()) domains_.push_back(&n.domain);
  }
  digits_.assign(domains_.size(), 0);
  done_ = domains_.empty();
}

bool ConfigurationEnumerator::Next(std::vector<double>& row) {
  row.resize(domains_.size());
  while (!done_) {
    for (std::size_t k = 0; k < domains_.size(); ++k) {
      row[k] = (*domains_[k])[digits_[k]];
    }
    // Advance the odometer; the last option varies fastest.
    std::size_t k = domains_.size();
    for (;;) {
      if (k == 0) {
        done_ = true;
        break;
      }
      --k;
      if (++digits_[k] < domains_[k]->size()) break;
      digits_[k] = 0;
    }
    if (space_.IsValidIn(row, scope_)) return true;
  }
  return false;
}

std::vector<std::vector<double>> EnumerateRows(const ConfigurationSpace& space,
                                               SubSpace scope,
                                               std::uint64_t cap) {
  ConfigurationEnumerator it(space, scope, cap);
  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  while (it.Next(row)) rows.push_back(row);
  return rows;
}

std::vector<Configuration> EnumerateValid(const ConfigurationSpace& space,
                                          std::uint64_t cap) {
  ConfigurationEnumerator it(space, SubSpace::kFull, cap);
  std::vector<Configuration> out;
  std::vector<double> row;
  while (it.Next(row)) out.push_back({row});
  return out;
}

std::uint64_t CountValid(const ConfigurationSpace& space, SubSpace scope,
                         std::uint64_t cap) {
  ConfigurationEnumerator it(space, scope, cap);
  std::uint64_t n = 0;
  std::vector<double> row;
  while (it.Next(row)) ++n;
  return n;
}

Configuration Combine(std::span<const double> binary_row,
                      std::span<const double> numeric_row) {
  Configuration c;
  c.values.reserve(binary_row.size() + numeric_row.size());
  c.values.insert(c.values.end(), binary_row.begin(), binary_row.end());
  c.values.insert(c.values.end(), numeric_row.begin(), numeric_row.end());
  return c;
}

}  // namespace cfgperf
