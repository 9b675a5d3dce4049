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

#include "cfgperf/evaluation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_set>

#include "cfgperf/error.h"
#include "cfgperf/kernels.h"

namespace cfgperf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void AddUnique(std::vector<std::string>& list, const std::string& v) {
  if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
}

// Dense view of the cell grid; absent or failed cells are +inf.
class Grid {
 public:
  explicit Grid(const std::vector<ExperimentCell>& cells) {
    for (const auto& c : cells) {
      AddUnique(L, c.learner);
      AddUnique(B, c.binary);
      AddUnique(N, c.numeric);
      AddUnique(S, c.system);
    }
    for (const auto& c : cells) {
      const double e = c.failure.empty() && std::isfinite(c.mean_error) ? c.mean_error : kInf;
      errors_[{c.learner, c.binary, c.numeric, c.system}] = e;
    }
  }

  double E(const std::string& l, const std::string& b, const std::string& n,
           const std::string& s) const {
    auto it = errors_.find({l, b, n, s});
    return it == errors_.end() ? kInf : it->second;
  }

  std::vector<std::string> L, B, N, S;

 private:
  std::map<std::tuple<std::string, std::string, std::string, std::string>, double> errors_;
};

double Range(const std::vector<double>& v) {
  double lo = kInf, hi = -kInf;
  for (double x : v) {
    if (!std::isfinite(x)) return kInf;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return v.empty() ? kInf : hi - lo;
}

// dim 0: learner, 1: binary, 2: numeric. `value` indexes that dimension.
double CellError(const Grid& g, int dim, const std::string& value, const std::string& o1,
                 const std::string& o2, const std::string& s) {
  switch (dim) {
    case 0: return g.E(value, o1, o2, s);
    case 1: return g.E(o1, value, o2, s);
    default: return g.E(o1, o2, value, s);
  }
}

const std::vector<std::string>& Dim(const Grid& g, int dim) {
  return dim == 0 ? g.L : dim == 1 ? g.B : g.N;
}
const std::vector<std::string>& Other1(const Grid& g, int dim) {
  return dim == 0 ? g.B : g.L;
}
const std::vector<std::string>& Other2(const Grid& g, int dim) {
  return dim == 2 ? g.B : g.N;
}

RqAnswer Superior(const Grid& g, int dim) {
  for (const auto& vi : Dim(g, dim)) {
    bool ok = true;
    for (const auto& o1 : Other1(g, dim)) {
      for (const auto& o2 : Other2(g, dim)) {
        for (const auto& s : g.S) {
          const double ei = CellError(g, dim, vi, o1, o2, s);
          for (const auto& vj : Dim(g, dim)) {
            if (vj != vi && !(ei < CellError(g, dim, vj, o1, o2, s))) ok = false;
          }
        }
      }
    }
    if (ok) return {true, vi};
  }
  return {};
}

double RangeOf(const Grid& g, int dim, const std::string& v, const std::string& s) {
  std::vector<double> e;
  for (const auto& o1 : Other1(g, dim)) {
    for (const auto& o2 : Other2(g, dim)) e.push_back(CellError(g, dim, v, o1, o2, s));
  }
  return Range(e);
}

RqAnswer MostStable(const Grid& g, int dim) {
  for (const auto& vi : Dim(g, dim)) {
    bool ok = true;
    for (const auto& s : g.S) {
      const double ri = RangeOf(g, dim, vi, s);
      for (const auto& vj : Dim(g, dim)) {
        if (vj != vi && !(ri < RangeOf(g, dim, vj, s))) ok = false;
      }
    }
    if (ok) return {true, vi};
  }
  return {};
}

}  // namespace

double MeanRelativeError(std::span<const double> measured,
                         std::span<const double> predicted) {
  return kernels::parallel::MeanRelativeError(measured, predicted);
}

double MeanError(const Predictor& predictor, const MeasurementTable& table,
                 const std::vector<Configuration>* exclude) {
  if (table.empty()) throw Error(ErrorCode::kInvalidData, "measurement table is empty");
  if (!exclude || exclude->empty()) {
    const std::vector<double> pred = PredictBatch(predictor, table.configs());
    return MeanRelativeError(table.performances(), pred);
  }
  std::unordered_set<Configuration, ConfigurationHash> skip(exclude->begin(), exclude->end());
  std::vector<Configuration> configs;
  std::vector<double> measured;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (skip.count(table.config(i))) continue;
    configs.push_back(table.config(i));
    measured.push_back(table.performance(i));
  }
  if (configs.empty()) {
    throw Error(ErrorCode::kInvalidData, "no configurations left after excluding the learning set");
  }
  return MeanRelativeError(measured, PredictBatch(predictor, configs));
}

double PerformanceVariation(const MeasurementTable& table) {
  if (table.empty()) throw Error(ErrorCode::kInvalidData, "measurement table is empty");
  const auto& p = table.performances();
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  return (*hi - *lo) / *lo;
}

double StabilityRange(std::span<const double> errors) {
  if (errors.empty()) throw Error(ErrorCode::kInvalidArgument, "empty group");
  const auto [lo, hi] = std::minmax_element(errors.begin(), errors.end());
  return *hi - *lo;
}

RqReport EvaluateResearchQuestions(const std::vector<ExperimentCell>& cells) {
  const Grid g(cells);
  RqReport r;
  r.rq11 = Superior(g, 0);
  r.rq12 = MostStable(g, 0);
  r.rq21_binary = Superior(g, 1);
  r.rq21_numeric = Superior(g, 2);
  r.rq22_binary = MostStable(g, 1);
  r.rq22_numeric = MostStable(g, 2);
  for (const auto& l : g.L) {
    for (const auto& b : g.B) {
      for (const auto& n : g.N) {
        bool ok = true;
        for (const auto& s : g.S) {
          const double e = g.E(l, b, n, s);
          for (const auto& lx : g.L) {
            for (const auto& by : g.B) {
              for (const auto& nz : g.N) {
                if (lx == l && by == b && nz == n) continue;
                if (!(e < g.E(lx, by, nz, s))) ok = false;
              }
            }
          }
        }
        if (ok && !r.rq31.holds) r.rq31 = {true, l + "/" + b + "/" + n};
      }
    }
  }
  return r;
}

std::vector<RangeEntry> StabilityRanges(const std::vector<ExperimentCell>& cells,
                                        const std::string& dimension) {
  int dim = 0;
  if (dimension == "learner") {
    dim = 0;
  } else if (dimension == "binary") {
    dim = 1;
  } else if (dimension == "numeric") {
    dim = 2;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown dimension '" + dimension + "'");
  }
  const Grid g(cells);
  std::vector<RangeEntry> out;
  for (const auto& s : g.S) {
    for (const auto& v : Dim(g, dim)) out.push_back({s, v, RangeOf(g, dim, v, s)});
  }
  return out;
}

}  // namespace cfgperf
