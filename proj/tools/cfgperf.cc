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

// Command-line front end: synth, sample, train, predict, run, report, stats.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cfgperf/binsample.h"
#include "cfgperf/error.h"
#include "cfgperf/evaluation.h"
#include "cfgperf/format.h"
#include "cfgperf/harness.h"
#include "cfgperf/measurement.h"
#include "cfgperf/numsample.h"
#include "cfgperf/pbd_seeds.h"
#include "cfgperf/predictor.h"
#include "cfgperf/report.h"
#include "cfgperf/rng.h"
#include "cfgperf/statistics.h"
#include "cfgperf/synthetic.h"
#include "cfgperf/tuning.h"

namespace fs = std::filesystem;
using namespace cfgperf;

namespace {

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSyntax, "'" + path + "': " + e.what());
  }
}

std::ofstream OpenOut(const std::string& path) {
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  return out;
}

// Derives a sub-seed when --master-seed was given, else keeps `seed`.
std::uint64_t Seeded(const std::optional<std::uint64_t>& master, std::uint64_t seed,
                     std::string_view tag) {
  return master ? HashString(HashSeed({*master, seed}), tag) : seed;
}

struct SynthArgs {
  std::string spec;
  std::string out_dir;
};

void RunSynth(const SynthArgs& a, const std::optional<std::uint64_t>& master) {
  SyntheticSystemSpec spec = SyntheticSystemSpec::FromJson(ReadJsonFile(a.spec));
  spec.seed = Seeded(master, spec.seed, "synth");
  const SyntheticSystem sys = GenerateSyntheticSystem(spec);
  fs::create_directories(a.out_dir);
  OpenOut((fs::path(a.out_dir) / "space.json").string()) << SerializeSpace(sys.space) << '\n';
  auto m = OpenOut((fs::path(a.out_dir) / "measurements.csv").string());
  WriteMeasurements(m, sys.table, sys.space);
  OpenOut((fs::path(a.out_dir) / "model.json").string()) << sys.model.ToJson().dump(2) << '\n';
  std::cout << sys.table.size() << " configurations, model: " << sys.model.Formula() << '\n';
}

struct SampleArgs {
  std::string space;
  std::string strategy;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  int levels = 5;
  double alpha = kDefaultCciAlpha;
  std::string pbd_seed = "9x3";
  std::string pbd_seeds_file;
  std::size_t restarts = 5;
  std::string terms = "quadratic";
  std::string out;
  std::string provenance;
};

void RunSample(const SampleArgs& a, const std::optional<std::uint64_t>& master) {
  const ConfigurationSpace space = LoadSpace(a.space);
  const std::uint64_t seed = Seeded(master, a.seed, a.strategy);
  const std::string& s = a.strategy;
  SampleSet sample;
  if (s == "ow" || s == "negow" || s == "t2" || s == "t3" || s == "rb") {
    BinaryStrategySpec spec;
    spec.seed = seed;
    spec.size = a.size;
    if (s == "ow") spec.kind = BinaryStrategySpec::Kind::kOptionWise;
    if (s == "negow") spec.kind = BinaryStrategySpec::Kind::kNegativeOptionWise;
    if (s == "t2" || s == "t3") {
      spec.kind = BinaryStrategySpec::Kind::kTWise;
      spec.t = s == "t2" ? 2 : 3;
    }
    if (s == "rb") {
      if (a.size == 0) throw Error(ErrorCode::kInvalidArgument, "rb needs --size");
      spec.kind = BinaryStrategySpec::Kind::kRandom;
    }
    sample = SampleBinary(space, spec);
  } else {
    using Kind = NumericStrategySpec::Kind;
    NumericStrategySpec spec;
    if (s == "ofat") {
      spec.kind = Kind::kOfat;
    } else if (s == "bbd") {
      spec.kind = Kind::kBoxBehnken;
    } else if (s == "cci") {
      spec.kind = Kind::kCentralComposite;
    } else if (s == "pbd") {
      spec.kind = Kind::kPlackettBurman;
    } else if (s == "dod") {
      spec.kind = Kind::kDOptimal;
    } else if (s == "rn") {
      spec.kind = Kind::kRandom;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown strategy '" + s + "'");
    }
    if ((s == "dod" || s == "rn") && a.size == 0) {
      throw Error(ErrorCode::kInvalidArgument, s + " needs --size");
    }
    spec.levels = a.levels;
    spec.alpha = a.alpha;
    spec.pbd_seed = a.pbd_seed;
    spec.size = a.size;
    spec.restarts = a.restarts;
    spec.terms = ParseModelTerms(a.terms);
    spec.seed = seed;
    std::vector<PbdSeed> seeds =
        a.pbd_seeds_file.empty() ? BuiltinPbdSeeds() : LoadPbdSeeds(a.pbd_seeds_file);
    sample = SampleNumeric(space, spec, &seeds);
  }
  if (a.out.empty()) {
    WriteSampleCsv(std::cout, sample, space);
  } else {
    auto out = OpenOut(a.out);
    WriteSampleCsv(out, sample, space);
  }
  const std::string prov = !a.provenance.empty() ? a.provenance
                           : !a.out.empty()      ? a.out + ".json"
                                                 : "";
  if (!prov.empty()) OpenOut(prov) << ProvenanceJson(sample).dump(2) << '\n';
  for (const auto& w : sample.warnings) std::cerr << "warning: " << w << '\n';
}

struct TrainArgs {
  std::string space;
  std::string data;
  std::string learner;
  std::string hyperparams;  // JSON object text
  std::string domains;
  std::size_t budget = 0;   // 0: no tuning
  std::size_t folds = 5;
  std::uint64_t tune_seed = 0;
  std::string trial_log;
  std::string model_out;
};

void RunTrain(const TrainArgs& a, const std::optional<std::uint64_t>& master) {
  const ConfigurationSpace space = LoadSpace(a.space);
  const MeasurementTable table = ReadMeasurementsFile(a.data, space);
  LabeledSet data{table.configs(), table.performances()};
  const LearnerId learner = ParseLearner(a.learner);
  HyperParams hp(learner, a.hyperparams.empty() ? nlohmann::json::object()
                                                : nlohmann::json::parse(a.hyperparams));
  if (a.budget > 0) {
    const HyperParamSpace domains =
        a.domains.empty() ? HyperParamSpace::Default() : HyperParamSpace::Load(a.domains);
    TuningOptions opt;
    opt.budget = a.budget;
    opt.folds = a.folds;
    opt.seed = Seeded(master, a.tune_seed, "tune");
    const TuningResult r = RandomSearch(space, learner, domains, data, opt);
    hp = r.best;
    if (!a.trial_log.empty()) {
      auto out = OpenOut(a.trial_log);
      WriteTrialLog(out, r);
    }
    std::cerr << "best trial " << r.best_trial << ": " << hp.Dump() << '\n';
  }
  const auto predictor = Train(space, data, hp);
  const std::string model = predictor->ToJson().dump(2);
  if (a.model_out.empty()) {
    std::cout << model << '\n';
  } else {
    OpenOut(a.model_out) << model << '\n';
  }
  for (const auto& w : predictor->warnings()) std::cerr << "warning: " << w << '\n';
}

struct PredictArgs {
  std::string space;
  std::string model;
  std::string data;
};

void RunPredict(const PredictArgs& a) {
  const ConfigurationSpace space = LoadSpace(a.space);
  const auto predictor = PredictorFromJson(ReadJsonFile(a.model));
  const MeasurementTable table = ReadMeasurementsFile(a.data, space);
  const std::vector<double> pred = PredictBatch(*predictor, table.configs());
  const auto names = space.OptionNames();
  for (const auto& n : names) std::cout << n << ',';
  std::cout << "performance,predicted\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (double v : table.config(i).values) std::cout << FormatDouble(v) << ',';
    std::cout << FormatDouble(table.performance(i)) << ',' << FormatDouble(pred[i]) << '\n';
  }
  std::cerr << "mean relative error: "
            << FormatDouble(MeanRelativeError(table.performances(), pred)) << '\n';
}

struct RunArgs {
  std::string plan;
  std::string out_dir;
  std::size_t workers = 0;
  bool quiet = false;
};

void RunRun(const RunArgs& a, const std::optional<std::uint64_t>& master) {
  ExperimentPlan plan = ExperimentPlan::Load(a.plan);
  if (master) plan.master_seed = *master;
  if (!a.out_dir.empty()) plan.output_dir = a.out_dir;
  const LoadedSystem system = LoadSystem(plan);
  RunOptions opt;
  opt.workers = a.workers;
  if (!a.quiet) {
    opt.progress = [](std::size_t done, std::size_t total) {
      std::cerr << "\rcells " << done << "/" << total << std::flush;
      if (done == total) std::cerr << '\n';
    };
  }
  const auto cells = RunExperiment(plan, system, opt);
  fs::create_directories(plan.output_dir);
  {
    auto out = OpenOut((fs::path(plan.output_dir) / "cells.csv").string());
    WriteCells(out, cells);
  }
  OpenOut((fs::path(plan.output_dir) / "plan.json").string()) << plan.ToJson().dump(2) << '\n';
  EmitReport(cells, (fs::path(plan.output_dir) / "report").string());
  std::size_t failed = 0;
  for (const auto& c : cells) failed += c.failure.empty() ? 0 : 1;
  std::cout << cells.size() << " cells (" << failed << " failed) written to "
            << plan.output_dir << '\n';
}

struct ReportArgs {
  std::string cells;
  std::string out_dir;
};

struct StatsArgs {
  std::string cells;
  std::string by = "learner";
  std::string out;
};

void RunStats(const StatsArgs& a) {
  const auto cells = ReadCellsFile(a.cells);
  const GroupSamples g = CollectGroups(cells, ParseDimension(a.by));
  const StatsComparison cmp = CompareGroups(g.names, g.samples);
  if (a.out.empty()) {
    WriteSignificanceTable(std::cout, cmp);
  } else {
    auto out = OpenOut(a.out);
    WriteSignificanceTable(out, cmp);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cfgperf: sampling and learning workbench for configurable-system performance"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> master;
  app.add_option("--master-seed", master,
                 "Master seed; overrides plan seeds and derives per-command seeds");

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic ground-truth system");
  c_synth->add_option("--spec", synth.spec, "Synthetic system spec (JSON)")->required();
  c_synth->add_option("--out", synth.out_dir, "Output directory")->required();

  SampleArgs sample;
  auto* c_sample = app.add_subcommand("sample", "Draw a binary or numeric sample");
  c_sample->add_option("--space", sample.space, "Variability model (JSON)")->required();
  c_sample->add_option("--strategy", sample.strategy,
                       "ow|negow|t2|t3|rb|ofat|bbd|cci|pbd|dod|rn")
      ->required()
      ->check(CLI::IsMember({"ow", "negow", "t2", "t3", "rb", "ofat", "bbd", "cci", "pbd",
                             "dod", "rn"}));
  c_sample->add_option("--size", sample.size, "Sample size (rb, dod, rn)");
  c_sample->add_option("--seed", sample.seed, "Random seed");
  c_sample->add_option("--levels", sample.levels, "OFAT levels per option")->capture_default_str();
  c_sample->add_option("--alpha", sample.alpha, "CCI corner spread")->capture_default_str();
  c_sample->add_option("--pbd-seed", sample.pbd_seed, "9x3|25x5|49x7|125x5")->capture_default_str();
  c_sample->add_option("--pbd-seeds", sample.pbd_seeds_file, "PBD seed file (JSON)");
  c_sample->add_option("--restarts", sample.restarts, "D-optimal restarts")->capture_default_str();
  c_sample->add_option("--terms", sample.terms, "D-optimal model terms")
      ->check(CLI::IsMember({"linear", "quadratic", "full-quadratic"}))
      ->capture_default_str();
  c_sample->add_option("--out", sample.out, "Sample CSV (default stdout)");
  c_sample->add_option("--provenance", sample.provenance,
                       "Provenance JSON (default <out>.json)");

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Train (and optionally tune) one learner");
  c_train->add_option("--space", train.space, "Variability model (JSON)")->required();
  c_train->add_option("--data", train.data, "Measurement CSV of the learning set")->required();
  c_train->add_option("--learner", train.learner, "MR|CART|RF|kNN|KRR|SVR")->required();
  c_train->add_option("--hyperparams", train.hyperparams, "Hyper-parameters (JSON object)");
  c_train->add_option("--domains", train.domains, "Tuning domains (JSON)");
  c_train->add_option("--budget", train.budget, "Random-search trials (0: no tuning)");
  c_train->add_option("--folds", train.folds, "Cross-validation folds")->capture_default_str();
  c_train->add_option("--tune-seed", train.tune_seed, "Tuning seed");
  c_train->add_option("--trial-log", train.trial_log, "Trial log CSV");
  c_train->add_option("--model-out", train.model_out, "Predictor JSON (default stdout)");

  PredictArgs predict;
  auto* c_predict = app.add_subcommand("predict", "Predict a measurement table");
  c_predict->add_option("--space", predict.space, "Variability model (JSON)")->required();
  c_predict->add_option("--model", predict.model, "Predictor JSON")->required();
  c_predict->add_option("--data", predict.data, "Measurement CSV")->required();

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Run an experiment plan");
  c_run->add_option("--plan", run.plan, "Plan file (JSON)")->required();
  c_run->add_option("--out", run.out_dir, "Output directory (overrides the plan)");
  c_run->add_option("--workers", run.workers, "Worker threads (default CFGPERF_WORKERS)");
  c_run->add_flag("--quiet", run.quiet, "No progress output");

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "Re-derive reports from a cells file");
  c_report->add_option("--cells", report.cells, "Cells CSV")->required();
  c_report->add_option("--out", report.out_dir, "Report directory")->required();

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "Pairwise Wilcoxon / Cliff's delta table");
  c_stats->add_option("--cells", stats.cells, "Cells CSV")->required();
  c_stats->add_option("--by", stats.by, "learner|binary|numeric")
      ->check(CLI::IsMember({"learner", "binary", "numeric"}))
      ->capture_default_str();
  c_stats->add_option("--out", stats.out, "Table CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*c_synth) RunSynth(synth, master);
    if (*c_sample) RunSample(sample, master);
    if (*c_train) RunTrain(train, master);
    if (*c_predict) RunPredict(predict);
    if (*c_run) RunRun(run, master);
    if (*c_report) EmitReport(ReadCellsFile(report.cells), report.out_dir);
    if (*c_stats) RunStats(stats);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
