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

#ifndef CFGPERF_REPORT_H_
#define CFGPERF_REPORT_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "cfgperf/evaluation.h"
#include "cfgperf/statistics.h"
#include "json.hpp"

namespace cfgperf {

// Group dimension of a cell grid.
enum class Dimension { kLearner, kBinary, kNumeric };
Dimension ParseDimension(const std::string& name);  // learner|binary|numeric
std::string DimensionName(Dimension d);

// Paired error samples per group value. Samples are aligned on the other two
// dimensions (and the system); keys where any group lacks a finite error are
// skipped, so every sample has the same length.
struct GroupSamples {
  std::vector<std::string> names;  // first-appearance order
  std::vector<std::vector<double>> samples;
};
GroupSamples CollectGroups(const std::vector<ExperimentCell>& cells, Dimension dim);

// Matrix CSV: first column the row name, cells "p;delta;magnitude" where p is
// the one-sided Wilcoxon p-value for "row has smaller errors than column",
// "---" on the diagonal.
void WriteSignificanceTable(std::ostream& out, const StatsComparison& cmp);

// Nested-matrix data in long form: system,row,col,<outer>,<inner>,value.
// Off-diagonal values are error(row) - error(col), so a negative value means
// the row is more accurate; the diagonal carries error(row).
void WriteNestedMatrix(std::ostream& out, const std::vector<ExperimentCell>& cells,
                       Dimension dim);

// Per group: every finite cell error plus mean, median and failure count.
nlohmann::json ViolinData(const std::vector<ExperimentCell>& cells);

// system,id,learner,binary,numeric,relative_size,mean_error of the
// non-dominated cells per system, by ascending error.
void WritePareto(std::ostream& out, const std::vector<ExperimentCell>& cells);

nlohmann::json RqJson(const std::vector<ExperimentCell>& cells);

// Writes matrix_{learner,binary,numeric}.csv, violins.json, pareto.csv,
// significance_{learner,binary,numeric}.csv and rq.json into `out_dir`
// (created if needed). Throws Error(kInvalidArgument) on empty cells and
// Error(kIo) when a file cannot be written.
void EmitReport(const std::vector<ExperimentCell>& cells, const std::string& out_dir);

}  // namespace cfgperf

#endif  // CFGPERF_REPORT_H_
