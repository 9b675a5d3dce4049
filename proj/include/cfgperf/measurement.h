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

#ifndef CFGPERF_MEASUREMENT_H_
#define CFGPERF_MEASUREMENT_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfgperf/space.h"

namespace cfgperf {

// Measured performance per configuration. Values are strictly positive and
// configurations unique.
class MeasurementTable {
 public:
  MeasurementTable() = default;
  MeasurementTable(std::string system, std::string metric)
      : system_(std::move(system)), metric_(std::move(metric)) {}

  // Throws Error(kInvalidData) on non-positive / non-finite performance or a
  // duplicate configuration.
  void Add(Configuration config, double performance);

  std::size_t size() const { return configs_.size(); }
  bool empty() const { return configs_.empty(); }
  const Configuration& config(std::size_t i) const { return configs_[i]; }
  double performance(std::size_t i) const { return performance_[i]; }
  const std::vector<Configuration>& configs() const { return configs_; }
  const std::vector<double>& performances() const { return performance_; }
  std::optional<std::size_t> Find(const Configuration& config) const;

  const std::string& system() const { return system_; }
  const std::string& metric() const { return metric_; }

 private:
  std::string system_;
  std::string metric_;
  std::vector<Configuration> configs_;
  std::vector<double> performance_;
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> index_;
};

// CSV with a header naming every option (any order) plus a final
// `performance` column. Rows that are not valid configurations are rejected
// with their line number.
MeasurementTable ReadMeasurements(std::istream& in, const ConfigurationSpace& space);
MeasurementTable ReadMeasurementsFile(const std::string& path,
                                      const ConfigurationSpace& space);
// Header in declared option order.
void WriteMeasurements(std::ostream& out, const MeasurementTable& table,
                       const ConfigurationSpace& space);

}  // namespace cfgperf

#endif  // CFGPERF_MEASUREMENT_H_
