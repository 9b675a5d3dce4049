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

#include "cfgperf/measurement.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "cfgperf/error.h"
#include "cfgperf/format.h"

namespace cfgperf {

void MeasurementTable::Add(Configuration config, double performance) {
  if (!std::isfinite(performance) || performance <= 0.0) {
    throw Error(ErrorCode::kInvalidData,
                "performance must be positive, got " + FormatDouble(performance));
  }
  auto [it, inserted] = index_.emplace(config, configs_.size());
  if (!inserted) {
    throw Error(ErrorCode::kInvalidData, "duplicate configuration in table");
  }
  configs_.push_back(std::move(config));
  performance_.push_back(performance);
}

std::optional<std::size_t> MeasurementTable::Find(const Configuration& config) const {
  auto it = index_.find(config);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

MeasurementTable ReadMeasurements(std::istream& in, const ConfigurationSpace& space) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kInvalidData, "measurement file is empty");
  }
  const auto header = SplitCsvLine(line);
  // column -> global option index, or npos for the performance column.
  constexpr std::size_t kPerf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column_to_option;
  std::vector<bool> seen(space.num_options(), false);
  bool has_perf = false;
  for (const auto& name : header) {
    if (name == "performance") {
      if (has_perf) throw Error(ErrorCode::kInvalidData, "duplicate performance column");
      has_perf = true;
      column_to_option.push_back(kPerf);
      continue;
    }
    auto idx = space.IndexOf(name);
    if (!idx) throw Error(ErrorCode::kInvalidData, "unknown column '" + name + "'");
    if (seen[*idx]) throw Error(ErrorCode::kInvalidData, "duplicate column '" + name + "'");
    seen[*idx] = true;
    column_to_option.push_back(*idx);
  }
  if (!has_perf) throw Error(ErrorCode::kInvalidData, "missing column 'performance'");
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kInvalidData,
                  "missing column '" + space.option_name(i) + "'");
    }
  }

  MeasurementTable table(space.name(), "performance");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = SplitCsvLine(line);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kInvalidData, where + "expected " +
                                               std::to_string(header.size()) +
                                               " fields");
    }
    Configuration config;
    config.values.assign(space.num_options(), 0.0);
    double perf = 0.0;
    try {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        const double v = ParseDouble(fields[c]);
        if (column_to_option[c] == kPerf) {
          perf = v;
        } else {
          config.values[column_to_option[c]] = v;
        }
      }
      if (!space.IsValid(config)) {
        throw Error(ErrorCode::kInvalidData, "configuration violates constraints");
      }
      table.Add(std::move(config), perf);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidData, where + e.what());
    }
  }
  return table;
}

MeasurementTable ReadMeasurementsFile(const std::string& path,
                                      const ConfigurationSpace& space) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open measurements " + path);
  return ReadMeasurements(in, space);
}

void WriteMeasurements(std::ostream& out, const MeasurementTable& table,
                       const ConfigurationSpace& space) {
  for (const auto& name : space.OptionNames()) out << CsvField(name) << ',';
  out << "performance\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (double v : table.config(i).values) out << FormatDouble(v) << ',';
    out << FormatDouble(table.performance(i)) << '\n';
  }
}

}  // namespace cfgperf
