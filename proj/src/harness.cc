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

#include "cfgperf/harness.h"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cfgperf/error.h"
#include "cfgperf/format.h"
#include "cfgperf/pbd_seeds.h"
#include "cfgperf/predictor.h"
#include "cfgperf/rng.h"
#include "cfgperf/synthetic.h"

namespace cfgperf {
namespace {

constexpr const char* kCellColumns[] = {
    "system",       "learner",       "binary",     "numeric",
    "learning_set_size", "product_size", "relative_size", "mean_error",
    "seed_errors",  "hyperparams",   "failure"};

std::string Resolve(const std::string& base, const std::string& path) {
  if (path.empty() || base.empty() || std::filesystem::path(path).is_absolute()) {
    return path;
  }
  return (std::filesystem::path(base) / path).string();
}

// A sample or the reason it could not be drawn.
struct CachedSample {
  std::optional<SampleSet> sample;
  std::string error;
};

}  // namespace

LearningSet BuildLearningSet(const ConfigurationSpace& space, const SampleSet& binary,
                             const SampleSet& numeric) {
  LearningSet out;
  out.product_size = binary.size() * numeric.size();
  std::unordered_set<Configuration, ConfigurationHash> seen;
  for (const auto& b : binary.rows) {
    for (const auto& n : numeric.rows) {
      Configuration c = Combine(b, n);
      space.CheckMembership(c.values, SubSpace::kFull);
      if (!space.IsValid(c)) {
        ++out.dropped;
        continue;
      }
      if (seen.insert(c).second) out.configs.push_back(std::move(c));
    }
  }
  if (out.configs.empty()) {
    throw Error(ErrorCode::kIncompatible, "strategies incompatible with constraints");
  }
  return out;
}

ExperimentPlan ExperimentPlan::FromJson(const nlohmann::json& j, const std::string& base_dir) {
  ExperimentPlan p;
  try {
    const auto& sys = j.at("system");
    if (sys.contains("synthetic")) {
      if (sys.contains("measurements")) {
        throw Error(ErrorCode::kInvalidData, "plan system has both synthetic and measurements");
      }
      p.synthetic = sys.at("synthetic");
    } else {
      p.space_path = Resolve(base_dir, sys.at("space").get<std::string>());
      p.measurements_path = Resolve(base_dir, sys.at("measurements").get<std::string>());
    }
    p.learners = j.at("learners").get<std::vector<std::string>>();
    p.binary = j.at("binary").get<std::vector<std::string>>();
    p.numeric = j.at("numeric").get<std::vector<std::string>>();
    if (j.contains("seeds")) p.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("tuning")) {
      const auto& t = j.at("tuning");
      p.budget = t.value("budget", p.budget);
      p.folds = t.value("folds", p.folds);
      if (t.contains("hyperparams")) {
        p.hyperparams_path = Resolve(base_dir, t.at("hyperparams").get<std::string>());
      }
    }
    if (j.contains("sampling")) {
      const auto& s = j.at("sampling");
      p.ofat_levels = s.value("ofat_levels", p.ofat_levels);
      p.cci_alpha = s.value("cci_alpha", p.cci_alpha);
      p.dod_restarts = s.value("dod_restarts", p.dod_restarts);
      p.dod_terms = s.value("dod_terms", p.dod_terms);
      if (s.contains("pbd_seeds")) {
        p.pbd_seeds_path = Resolve(base_dir, s.at("pbd_seeds").get<std::string>());
      }
    }
    p.exclude_learning_set = j.value("exclude_learning_set", false);
    p.output_dir = Resolve(base_dir, j.value("output_dir", p.output_dir));
    p.master_seed = j.value("master_seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidData, std::string("plan: ") + e.what());
  }
  if (p.learners.empty() || p.binary.empty() || p.numeric.empty() || p.seeds.empty()) {
    throw Error(ErrorCode::kInvalidData, "plan: learner, strategy and seed lists must be non-empty");
  }
  if (std::set<std::uint64_t>(p.seeds.begin(), p.seeds.end()).size() != p.seeds.size()) {
    throw Error(ErrorCode::kInvalidData, "plan: seeds must be distinct");
  }
  if (p.budget < 1) throw Error(ErrorCode::kInvalidData, "plan: tuning budget must be >= 1");
  if (p.folds < 2) throw Error(ErrorCode::kInvalidData, "plan: tuning needs >= 2 folds");
  try {
    for (const auto& l : p.learners) ParseLearner(l);
    for (const auto& b : p.binary) ParseBinaryStrategy(b);
    for (const auto& n : p.numeric) ParseNumericStrategy(n);
    ParseModelTerms(p.dod_terms);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidData, std::string("plan: ") + e.what());
  }
  return p;
}

ExperimentPlan ExperimentPlan::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open plan '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSyntax, "plan '" + path + "': " + e.what());
  }
  return FromJson(j, std::filesystem::path(path).parent_path().string());
}

nlohmann::json ExperimentPlan::ToJson() const {
  nlohmann::json j;
  if (synthetic) {
    j["system"] = {{"synthetic", *synthetic}};
  } else {
    j["system"] = {{"space", space_path}, {"measurements", measurements_path}};
  }
  j["learners"] = learners;
  j["binary"] = binary;
  j["numeric"] = numeric;
  j["seeds"] = seeds;
  j["tuning"] = {{"budget", budget}, {"folds", folds}};
  if (!hyperparams_path.empty()) j["tuning"]["hyperparams"] = hyperparams_path;
  j["sampling"] = {{"ofat_levels", ofat_levels},
                   {"cci_alpha", cci_alpha},
                   {"dod_restarts", dod_restarts},
                   {"dod_terms", dod_terms}};
  if (!pbd_seeds_path.empty()) j["sampling"]["pbd_seeds"] = pbd_seeds_path;
  j["exclude_learning_set"] = exclude_learning_set;
  j["output_dir"] = output_dir;
  j["master_seed"] = master_seed;
  return j;
}

LoadedSystem LoadSystem(const ExperimentPlan& plan) {
  if (plan.synthetic) {
    SyntheticSystem s = GenerateSyntheticSystem(SyntheticSystemSpec::FromJson(*plan.synthetic));
    return LoadedSystem{std::move(s.space), std::move(s.table)};
  }
  ConfigurationSpace space = LoadSpace(plan.space_path);
  MeasurementTable table = ReadMeasurementsFile(plan.measurements_path, space);
  return LoadedSystem{std::move(space), std::move(table)};
}

std::size_t WorkersFromEnvironment() {
  const char* env = std::getenv("CFGPERF_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) {
    throw Error(ErrorCode::kInvalidArgument, "CFGPERF_WORKERS must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<ExperimentCell> RunExperiment(const ExperimentPlan& plan,
                                          const LoadedSystem& system,
                                          const RunOptions& options) {
  const ConfigurationSpace& space = system.space;
  const MeasurementTable& table = system.table;
  if (table.empty()) throw Error(ErrorCode::kInvalidData, "measurement table is empty");

  const HyperParamSpace hp_space = plan.hyperparams_path.empty()
                                       ? HyperParamSpace::Default()
                                       : HyperParamSpace::Load(plan.hyperparams_path);
  std::vector<PbdSeed> pbd_seeds = plan.pbd_seeds_path.empty()
                                       ? BuiltinPbdSeeds()
                                       : LoadPbdSeeds(plan.pbd_seeds_path);
  NumericSettings settings;
  settings.ofat_levels = plan.ofat_levels;
  settings.cci_alpha = plan.cci_alpha;
  settings.dod_restarts = plan.dod_restarts;
  settings.dod_terms = ParseModelTerms(plan.dod_terms);
  settings.pbd_seeds = &pbd_seeds;

  // Samples depend only on (strategy, seed), so every learner sees the same
  // learning sets. Deterministic strategies are drawn once.
  const std::size_t num_seeds = plan.seeds.size();
  std::vector<BinaryStrategy> bins;
  std::vector<NumericStrategy> nums;
  for (const auto& b : plan.binary) bins.push_back(ParseBinaryStrategy(b));
  for (const auto& n : plan.numeric) nums.push_back(ParseNumericStrategy(n));
  std::vector<std::vector<CachedSample>> bin_samples(bins.size());
  std::vector<std::vector<CachedSample>> num_samples(nums.size());
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const std::size_t runs = bins[i].random() ? num_seeds : 1;
    for (std::size_t r = 0; r < runs; ++r) {
      const std::uint64_t seed = HashSeed(
          {plan.master_seed, HashString(0, "binary:" + bins[i].name), plan.seeds[r]});
      CachedSample c;
      try {
        c.sample = DrawBinary(space, bins[i], seed);
      } catch (const Error& e) {
        c.error = e.what();
      }
      bin_samples[i].push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < nums.size(); ++i) {
    const std::size_t runs = nums[i].random() ? num_seeds : 1;
    for (std::size_t r = 0; r < runs; ++r) {
      const std::uint64_t seed = HashSeed(
          {plan.master_seed, HashString(0, "numeric:" + nums[i].name), plan.seeds[r]});
      CachedSample c;
      try {
        c.sample = DrawNumeric(space, nums[i], seed, settings);
      } catch (const Error& e) {
        c.error = e.what();
      }
      num_samples[i].push_back(std::move(c));
    }
  }

  struct Job {
    std::size_t learner, bin, num;
  };
  std::vector<Job> jobs;
  std::vector<LearnerId> learners;
  for (const auto& l : plan.learners) learners.push_back(ParseLearner(l));
  for (std::size_t l = 0; l < learners.size(); ++l) {
    for (std::size_t b = 0; b < bins.size(); ++b) {
      for (std::size_t n = 0; n < nums.size(); ++n) jobs.push_back({l, b, n});
    }
  }

  std::vector<ExperimentCell> cells(jobs.size());
  std::size_t workers = options.workers ? options.workers : WorkersFromEnvironment();
  if (workers == 0) workers = static_cast<std::size_t>(omp_get_max_threads());
  std::mutex progress_mu;
  std::size_t done = 0;

#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(workers))
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job job = jobs[j];
    const LearnerId learner = learners[job.learner];
    ExperimentCell& cell = cells[j];
    cell.system = table.system().empty() ? space.name() : table.system();
    cell.learner = LearnerName(learner);
    cell.binary = bins[job.bin].name;
    cell.numeric = nums[job.num].name;
    const bool averaged = bins[job.bin].random() || nums[job.num].random();
    const std::size_t runs = averaged ? num_seeds : 1;
    double sum = 0.0;
    for (std::size_t r = 0; r < runs && cell.failure.empty(); ++r) {
      const std::string tag = runs > 1 ? "seed " + std::to_string(plan.seeds[r]) + ": " : "";
      try {
        const CachedSample& bs = bin_samples[job.bin][bins[job.bin].random() ? r : 0];
        const CachedSample& ns = num_samples[job.num][nums[job.num].random() ? r : 0];
        if (!bs.sample) throw Error(ErrorCode::kInvalidArgument, "binary sampling: " + bs.error);
        if (!ns.sample) throw Error(ErrorCode::kInvalidArgument, "numeric sampling: " + ns.error);
        LearningSet ls = BuildLearningSet(space, *bs.sample, *ns.sample);
        LabeledSet data;
        for (const auto& c : ls.configs) {
          const auto idx = table.Find(c);
          if (!idx) {
            throw Error(ErrorCode::kInvalidData,
                        "learning-set configuration missing from the measurements");
          }
          data.configs.push_back(c);
          data.performance.push_back(table.performance(*idx));
        }
        TuningOptions topt;
        topt.budget = plan.budget;
        topt.folds = std::min(plan.folds, data.size());
        topt.seed = HashSeed({plan.master_seed, HashString(0, cell.learner),
                              HashString(0, cell.binary), HashString(0, cell.numeric),
                              plan.seeds[r]});
        HyperParams hp = HyperParams::Defaults(learner);
        if (topt.folds >= 2) hp = RandomSearch(space, learner, hp_space, data, topt).best;
        const auto predictor = Train(space, data, hp);
        const double e =
            MeanError(*predictor, table, plan.exclude_learning_set ? &data.configs : nullptr);
        if (!std::isfinite(e)) throw Error(ErrorCode::kNumerical, "non-finite error rate");
        if (r == 0) {
          cell.learning_set_size = data.size();
          cell.product_size = ls.product_size;
          cell.relative_size =
              static_cast<double>(data.size()) / static_cast<double>(table.size());
          cell.hyperparams = hp.Dump();
        }
        cell.seed_errors.push_back(e);
        sum += e;
      } catch (const std::exception& e) {
        cell.failure = tag + e.what();
      }
    }
    cell.mean_error = cell.failure.empty() ? sum / static_cast<double>(runs) : INFINITY;
    if (options.progress) {
      std::lock_guard<std::mutex> lock(progress_mu);
      options.progress(++done, jobs.size());
    }
  }
  return cells;
}

void WriteCells(std::ostream& out, const std::vector<ExperimentCell>& cells) {
  for (std::size_t k = 0; k < std::size(kCellColumns); ++k) out << (k ? "," : "") << kCellColumns[k];
  out << '\n';
  for (const auto& c : cells) {
    std::string seeds;
    for (std::size_t k = 0; k < c.seed_errors.size(); ++k) {
      seeds += (k ? ";" : "") + FormatDouble(c.seed_errors[k]);
    }
    out << CsvField(c.system) << ',' << CsvField(c.learner) << ',' << CsvField(c.binary) << ','
        << CsvField(c.numeric) << ',' << c.learning_set_size << ',' << c.product_size << ','
        << FormatDouble(c.relative_size) << ',' << FormatDouble(c.mean_error) << ','
        << CsvField(seeds) << ',' << CsvField(c.hyperparams) << ',' << CsvField(c.failure)
        << '\n';
  }
}

std::vector<ExperimentCell> ReadCells(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kInvalidData, "cells file is empty");
  const auto header = SplitCsvLine(line);
  if (header.size() != std::size(kCellColumns)) {
    throw Error(ErrorCode::kInvalidData, "cells file: unexpected header");
  }
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] != kCellColumns[k]) {
      throw Error(ErrorCode::kInvalidData, "cells file: unexpected column '" + header[k] + "'");
    }
  }
  std::vector<ExperimentCell> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = SplitCsvLine(line);
    const std::string where = "cells file line " + std::to_string(line_no);
    if (f.size() != header.size()) {
      throw Error(ErrorCode::kInvalidData, where + ": expected " +
                                               std::to_string(header.size()) + " fields");
    }
    try {
      ExperimentCell c;
      c.system = f[0];
      c.learner = f[1];
      c.binary = f[2];
      c.numeric = f[3];
      c.learning_set_size = std::stoull(f[4]);
      c.product_size = std::stoull(f[5]);
      c.relative_size = ParseDouble(f[6]);
      c.mean_error = ParseDouble(f[7]);
      std::stringstream ss(f[8]);
      std::string item;
      while (std::getline(ss, item, ';')) c.seed_errors.push_back(ParseDouble(item));
      c.hyperparams = f[9];
      c.failure = f[10];
      cells.push_back(std::move(c));
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidData, where + ": " + e.what());
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidData, where + ": malformed count");
    }
  }
  return cells;
}

std::vector<ExperimentCell> ReadCellsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open cells file '" + path + "'");
  return ReadCells(in);
}

}  // namespace cfgperf
