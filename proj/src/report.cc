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

#include "cfgperf/report.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>

#include "cfgperf/error.h"
#include "cfgperf/format.h"

namespace cfgperf {
namespace {

const std::string& Field(const ExperimentCell& c, Dimension d) {
  switch (d) {
    case Dimension::kLearner:
      return c.learner;
    case Dimension::kBinary:
      return c.binary;
    case Dimension::kNumeric:
      return c.numeric;
  }
  return c.learner;
}

// The two dimensions other than `d`, outer first.
std::pair<Dimension, Dimension> Others(Dimension d) {
  switch (d) {
    case Dimension::kLearner:
      return {Dimension::kBinary, Dimension::kNumeric};
    case Dimension::kBinary:
      return {Dimension::kLearner, Dimension::kNumeric};
    case Dimension::kNumeric:
      return {Dimension::kLearner, Dimension::kBinary};
  }
  return {Dimension::kBinary, Dimension::kNumeric};
}

void AddUnique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

using Key = std::tuple<std::string, std::string, std::string>;  // system, outer, inner

// group value -> key -> error, plus orderings.
struct Indexed {
  std::vector<std::string> groups;
  std::vector<Key> keys;  // first-appearance order
  std::map<std::string, std::map<Key, double>> error;
};

Indexed Index(const std::vector<ExperimentCell>& cells, Dimension dim) {
  const auto [outer, inner] = Others(dim);
  Indexed ix;
  std::map<Key, bool> seen;
  for (const auto& c : cells) {
    AddUnique(ix.groups, Field(c, dim));
    Key k{c.system, Field(c, outer), Field(c, inner)};
    if (!seen[k]) {
      seen[k] = true;
      ix.keys.push_back(k);
    }
    ix.error[Field(c, dim)][k] = c.mean_error;
  }
  return ix;
}

double Lookup(const Indexed& ix, const std::string& g, const Key& k) {
  const auto& m = ix.error.at(g);
  const auto it = m.find(k);
  return it == m.end() ? INFINITY : it->second;
}

double Median(std::vector<double> v) {
  if (v.empty()) return NAN;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::ofstream OpenOut(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + p.string() + "'");
  return out;
}

nlohmann::json RqAnswerJson(const RqAnswer& a) {
  return {{"holds", a.holds}, {"witness", a.witness}};
}

}  // namespace

Dimension ParseDimension(const std::string& name) {
  if (name == "learner") return Dimension::kLearner;
  if (name == "binary") return Dimension::kBinary;
  if (name == "numeric") return Dimension::kNumeric;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown dimension '" + name + "' (learner, binary or numeric)");
}

std::string DimensionName(Dimension d) {
  switch (d) {
    case Dimension::kLearner:
      return "learner";
    case Dimension::kBinary:
      return "binary";
    case Dimension::kNumeric:
      return "numeric";
  }
  return "learner";
}

GroupSamples CollectGroups(const std::vector<ExperimentCell>& cells, Dimension dim) {
  const Indexed ix = Index(cells, dim);
  GroupSamples out;
  out.names = ix.groups;
  out.samples.resize(ix.groups.size());
  for (const auto& k : ix.keys) {
    bool complete = true;
    for (const auto& g : ix.groups) complete = complete && std::isfinite(Lookup(ix, g, k));
    if (!complete) continue;
    for (std::size_t i = 0; i < ix.groups.size(); ++i) {
      out.samples[i].push_back(Lookup(ix, ix.groups[i], k));
    }
  }
  return out;
}

void WriteSignificanceTable(std::ostream& out, const StatsComparison& cmp) {
  out << "row\\col";
  for (const auto& n : cmp.names) out << ',' << CsvField(n);
  out << '\n';
  for (std::size_t i = 0; i < cmp.names.size(); ++i) {
    out << CsvField(cmp.names[i]);
    for (std::size_t j = 0; j < cmp.names.size(); ++j) {
      if (i == j) {
        out << ",---";
      } else {
        out << ',' << FormatDouble(cmp.p_value[i][j]) << ';'
            << FormatDouble(cmp.delta[i][j].delta) << ';'
            << MagnitudeName(cmp.delta[i][j].magnitude);
      }
    }
    out << '\n';
  }
}

void WriteNestedMatrix(std::ostream& out, const std::vector<ExperimentCell>& cells,
                       Dimension dim) {
  const auto [outer, inner] = Others(dim);
  const Indexed ix = Index(cells, dim);
  out << "system,row,col," << DimensionName(outer) << ',' << DimensionName(inner)
      << ",value\n";
  for (const auto& r : ix.groups) {
    for (const auto& c : ix.groups) {
      for (const auto& k : ix.keys) {
        const double er = Lookup(ix, r, k);
        const double v = r == c ? er : er - Lookup(ix, c, k);
        out << CsvField(std::get<0>(k)) << ',' << CsvField(r) << ',' << CsvField(c) << ','
            << CsvField(std::get<1>(k)) << ',' << CsvField(std::get<2>(k)) << ','
            << FormatDouble(v) << '\n';
      }
    }
  }
}

nlohmann::json ViolinData(const std::vector<ExperimentCell>& cells) {
  nlohmann::json j = nlohmann::json::object();
  for (Dimension d : {Dimension::kLearner, Dimension::kBinary, Dimension::kNumeric}) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> errors;
    std::map<std::string, std::size_t> failed;
    for (const auto& c : cells) {
      AddUnique(order, Field(c, d));
      if (std::isfinite(c.mean_error)) {
        errors[Field(c, d)].push_back(c.mean_error);
      } else {
        ++failed[Field(c, d)];
      }
    }
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : order) {
      const auto& e = errors[g];
      double mean = 0.0;
      for (double x : e) mean += x;
      mean = e.empty() ? NAN : mean / static_cast<double>(e.size());
      nlohmann::json values = nlohmann::json::array();
      for (double x : e) values.push_back(FormatDouble(x));
      groups.push_back({{"name", g},
                        {"errors", values},
                        {"mean", FormatDouble(mean)},
                        {"median", FormatDouble(Median(e))},
                        {"failed", failed[g]}});
    }
    j[DimensionName(d)] = groups;
  }
  return j;
}

void WritePareto(std::ostream& out, const std::vector<ExperimentCell>& cells) {
  out << "system,id,learner,binary,numeric,relative_size,mean_error\n";
  std::vector<std::string> systems;
  for (const auto& c : cells) AddUnique(systems, c.system);
  for (const auto& s : systems) {
    std::vector<ParetoPoint> points;
    std::map<std::string, const ExperimentCell*> by_id;
    for (const auto& c : cells) {
      if (c.system != s || !std::isfinite(c.mean_error)) continue;
      const std::string id = c.learner + "/" + c.binary + "/" + c.numeric;
      points.push_back({id, c.relative_size, c.mean_error});
      by_id[id] = &c;
    }
    for (const auto& p : ParetoFront(points)) {
      const ExperimentCell& c = *by_id.at(p.id);
      out << CsvField(s) << ',' << CsvField(p.id) << ',' << CsvField(c.learner) << ','
          << CsvField(c.binary) << ',' << CsvField(c.numeric) << ','
          << FormatDouble(p.relative_size) << ',' << FormatDouble(p.mean_error) << '\n';
    }
  }
}

nlohmann::json RqJson(const std::vector<ExperimentCell>& cells) {
  const RqReport r = EvaluateResearchQuestions(cells);
  nlohmann::json j;
  j["rq1.1_superior_learner"] = RqAnswerJson(r.rq11);
  j["rq1.2_most_stable_learner"] = RqAnswerJson(r.rq12);
  j["rq2.1_superior_binary"] = RqAnswerJson(r.rq21_binary);
  j["rq2.1_superior_numeric"] = RqAnswerJson(r.rq21_numeric);
  j["rq2.2_most_stable_binary"] = RqAnswerJson(r.rq22_binary);
  j["rq2.2_most_stable_numeric"] = RqAnswerJson(r.rq22_numeric);
  j["rq3.1_superior_combination"] = RqAnswerJson(r.rq31);
  nlohmann::json ranges;
  for (const char* dim : {"learner", "binary", "numeric"}) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : StabilityRanges(cells, dim)) {
      rows.push_back({{"system", e.system}, {"value", e.value}, {"range", FormatDouble(e.range)}});
    }
    ranges[dim] = rows;
  }
  j["stability_ranges"] = ranges;
  return j;
}

void EmitReport(const std::vector<ExperimentCell>& cells, const std::string& out_dir) {
  if (cells.empty()) throw Error(ErrorCode::kInvalidArgument, "no cells to report");
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + out_dir + "': " + ec.message());
  for (Dimension d : {Dimension::kLearner, Dimension::kBinary, Dimension::kNumeric}) {
    const std::string name = DimensionName(d);
    {
      auto out = OpenOut(dir / ("matrix_" + name + ".csv"));
      WriteNestedMatrix(out, cells, d);
    }
    const GroupSamples g = CollectGroups(cells, d);
    auto out = OpenOut(dir / ("significance_" + name + ".csv"));
    WriteSignificanceTable(out, CompareGroups(g.names, g.samples));
  }
  {
    auto out = OpenOut(dir / "violins.json");
    out << ViolinData(cells).dump(2) << '\n';
  }
  {
    auto out = OpenOut(dir / "pareto.csv");
    WritePareto(out, cells);
  }
  auto out = OpenOut(dir / "rq.json");
  out << RqJson(cells).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed in '" + out_dir + "'");
}

}  // namespace cfgperf
