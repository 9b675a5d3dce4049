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

// Acceptance runner: one PASS/FAIL line per criterion. Oracles are computed
// here independently of the library code paths they check. Tolerances and
// time budgets are fixed below.
//
//   cfgperf_acceptance [--only 1,4,7]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <bit>

#include "CLI11.hpp"
#include "cfgperf/binsample.h"
#include "cfgperf/d_optimal.h"
#include "cfgperf/error.h"
#include "cfgperf/evaluation.h"
#include "cfgperf/harness.h"
#include "cfgperf/learners.h"
#include "cfgperf/numsample.h"
#include "cfgperf/pbd_seeds.h"
#include "cfgperf/report.h"
#include "cfgperf/statistics.h"
#include "cfgperf/strategy.h"
#include "cfgperf/synthetic.h"
#include "test_util.h"

namespace cfgperf {
namespace {

namespace fs = std::filesystem;
using testing::GridSpace;
using testing::Labeled;
using testing::SpaceFromJson;
using testing::TableFrom;

// Collects the reasons a criterion failed.
class Verdict {
 public:
  void Require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += !ok;
  }
  void Note(std::string s) { notes_.push_back(std::move(s)); }

  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::string s = std::to_string(checks_ - failed_) + "/" + std::to_string(checks_) + " checks";
    for (const auto& n : notes_) s += "; " + n;
    for (const auto& f : failures_) s += "; FAILED: " + f;
    return s;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Numeric design sizes

void DesignSizes(Verdict& v) {
  const auto cube3 = GridSpace(0, 3, 9);
  const auto cube4 = GridSpace(0, 4, 9);
  const auto seeds = BuiltinPbdSeeds();
  const auto ofat = SampleOneFactorAtATime(cube3, 5).size();
  const auto bbd = SampleBoxBehnken(cube3);
  const auto cci = SampleCentralComposite(cube3).size();
  const auto pbd = SamplePlackettBurman(cube3, FindPbdSeed(seeds, "9x3")).size();
  const auto bbd4 = SampleBoxBehnken(cube4).size();
  v.Require(ofat == 13, "OFAT(5) = " + std::to_string(ofat));
  v.Require(bbd.size() == 13, "BBD = " + std::to_string(bbd.size()));
  v.Require(cci == 15, "CCI = " + std::to_string(cci));
  v.Require(pbd == 9, "PBD(9,3) = " + std::to_string(pbd));
  v.Require(bbd4 == 25, "BBD(k=4) = " + std::to_string(bbd4));
  // Layout: centre plus the twelve edge midpoints of the cube.
  std::set<std::vector<double>> expect{{4, 4, 4}};
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      for (double sa : {0.0, 8.0}) {
        for (double sb : {0.0, 8.0}) {
          std::vector<double> p{4, 4, 4};
          p[a] = sa;
          p[b] = sb;
          expect.insert(p);
        }
      }
    }
  }
  v.Require(std::set<std::vector<double>>(bbd.rows.begin(), bbd.rows.end()) == expect,
            "BBD layout differs from centre + edge midpoints");
}

// ---------------------------------------------------------------------------
// 2. Binary coverage

void BinaryCoverage(Verdict& v) {
  Rng rng(2024);
  std::size_t spaces = 0;
  for (int t = 0; t < 120; ++t) {
    const std::size_t n = 3 + rng.UniformBelow(10);  // 3..12
    const auto constraints = testing::RandomBinaryConstraints(n, rng.UniformBelow(n), rng);
    const auto space = GridSpace(n, 0, 0, constraints);
    // Brute force over all 2^n assignments.
    std::vector<std::uint64_t> valid;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      std::vector<double> row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = (m >> i) & 1;
      if (space.IsValid(Configuration{row})) valid.push_back(m);
    }
    if (valid.empty()) continue;
    ++spaces;
    auto masks = [&](const SampleSet& s) {
      std::vector<std::uint64_t> out;
      for (const auto& r : s.rows) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < n; ++i) m |= static_cast<std::uint64_t>(r[i] > 0.5) << i;
        v.Require(space.IsValid(Configuration{r}), "sampled row is invalid");
        out.push_back(m);
      }
      return out;
    };
    const auto ow = masks(SampleOptionWise(space));
    const auto neg = masks(SampleNegativeOptionWise(space));
    const auto t2 = masks(SampleTWise(space, 2));
    const std::string tag = "space " + std::to_string(t);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      const bool can_on = std::any_of(valid.begin(), valid.end(), [&](auto m) { return m & bit; });
      const bool can_off = std::any_of(valid.begin(), valid.end(), [&](auto m) { return !(m & bit); });
      if (can_on) {
        v.Require(std::any_of(ow.begin(), ow.end(), [&](auto m) { return m & bit; }),
                  tag + ": OW misses option " + std::to_string(i));
      }
      if (can_off) {
        v.Require(std::any_of(neg.begin(), neg.end(), [&](auto m) { return !(m & bit); }),
                  tag + ": NegOW never disables option " + std::to_string(i));
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint64_t pair = bit | (std::uint64_t{1} << j);
        if (std::any_of(valid.begin(), valid.end(), [&](auto m) { return (m & pair) == pair; })) {
          v.Require(std::any_of(t2.begin(), t2.end(), [&](auto m) { return (m & pair) == pair; }),
                    tag + ": T2 misses a pair");
        }
      }
    }
    // The all-enabled configuration, or the fullest valid one when it is not
    // valid.
    int fullest = 0;
    for (auto m : valid) fullest = std::max(fullest, std::popcount(m));
    v.Require(std::any_of(neg.begin(), neg.end(), [&](auto m) { return std::popcount(m) == fullest; }),
              tag + ": NegOW lacks the all-enabled configuration");
  }
  v.Note(std::to_string(spaces) + " satisfiable spaces");
}

// ---------------------------------------------------------------------------
// 3. D-optimal quality

double BruteBestLogDet(const Eigen::MatrixXd& x, std::size_t size) {
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - static_cast<long>(size), pick.end(), true);
  double best = -INFINITY;
  do {
    Eigen::MatrixXd sub(static_cast<long>(size), x.cols());
    long k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) sub.row(k++) = x.row(static_cast<long>(i));
    }
    const double det = (sub.transpose() * sub).determinant();
    if (det > 0) best = std::max(best, std::log(det));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

void DOptimalQuality(Verdict& v) {
  Rng rng(303);
  int good = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 6 + rng.UniformBelow(7);     // 6..12 candidates
    const std::size_t size = 3 + rng.UniformBelow(3);  // choose 3..5
    const std::size_t factors = 1 + rng.UniformBelow(size - 1);
    Eigen::MatrixXd x(static_cast<long>(n), static_cast<long>(factors + 1));
    for (std::size_t i = 0; i < n; ++i) {
      x(static_cast<long>(i), 0) = 1.0;
      for (std::size_t f = 1; f <= factors; ++f) {
        x(static_cast<long>(i), static_cast<long>(f)) = rng.UniformDouble() * 2 - 1;
      }
    }
    DOptimalOptions opt;
    opt.size = size;
    opt.restarts = 5;
    opt.seed = static_cast<std::uint64_t>(t);
    const auto r = SelectDOptimal(x, opt);
    const double ratio = std::exp(r.log_det - BruteBestLogDet(x, size));
    good += ratio >= 0.95;
  }
  v.Require(good >= 95, "only " + std::to_string(good) + "/100 reach 0.95");
  v.Note(std::to_string(good) + "/100 instances within 0.95 of optimum");
}

// ---------------------------------------------------------------------------
// 4. Example regression tree

void ExampleTree(Verdict& v) {
  const auto space = SpaceFromJson(
      {{"binary", {"o_Bin1"}},
       {"numeric", {{{"name", "o_Num1"}, {"min", 0}, {"max", 40}, {"step", 10}}}}});
  const CartTree tree({{0, 0.5, 1, 2, 0.0},
                       {-1, 0.0, -1, -1, 100.0},
                       {1, 20.0, 3, 4, 0.0},
                       {-1, 0.0, -1, -1, 200.0},
                       {-1, 0.0, -1, -1, 250.0}});
  const CartModel model(HyperParams::Defaults(LearnerId::kCART), FeatureEncoding(space, false),
                        tree);
  v.Require(model.Predict(space, Configuration{{1, 30}}) == 250.0, "(1, 30) != 250");
  for (double n : {0.0, 10.0, 20.0, 30.0, 40.0}) {
    v.Require(model.Predict(space, Configuration{{0, n}}) == 100.0, "(0, .) != 100");
  }
}

// ---------------------------------------------------------------------------
// 5. Learner oracles

HyperParams Hp(LearnerId id, const nlohmann::json& values) {
  nlohmann::json merged = HyperParams::Defaults(id).values();
  for (const auto& [k, val] : values.items()) merged[k] = val;
  return HyperParams(id, merged);
}

LabeledSet Subset(const MeasurementTable& t, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto idx = PartialShuffle(t.size(), n, rng);
  std::sort(idx.begin(), idx.end());
  LabeledSet out;
  for (std::size_t i : idx) {
    out.configs.push_back(t.config(i));
    out.performance.push_back(t.performance(i));
  }
  return out;
}

void LearnerOracles(Verdict& v) {
  // Kernel ridge with a vanishing ridge and a linear kernel against the
  // normal-equations solution.
  {
    const auto space = GridSpace(3, 2, 5);
    Rng noise(21);
    const auto table = TableFrom(space, [&](const std::vector<double>& x) {
      return 10 + 2 * x[0] - x[1] + 0.5 * x[3] * x[4] + noise.UniformDouble();
    });
    const auto data = Subset(table, 40, 4);
    const auto krr = KrrModel::Fit(space, data,
                                   Hp(LearnerId::kKRR, {{"alpha", 1e-8}, {"kernel", "linear"}}));
    const FeatureEncoding enc(space, true);
    const Eigen::MatrixXd X = enc.EncodeAll(data.configs);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
        data.performance.data(), static_cast<long>(data.size()));
    const Eigen::VectorXd w = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    double worst = 0.0;
    for (const auto& c : table.configs()) {
      const double ols = enc.Encode(c.values).dot(w);
      worst = std::max(worst, std::abs(krr->Predict(space, c) - ols) / std::abs(ols));
    }
    v.Require(worst < 1e-6, "KRR vs least squares deviation " + Fmt(worst));
    v.Note("KRR/OLS deviation " + Fmt(worst));
  }

  const auto space = GridSpace(3, 2, 5);
  Rng noise(3);
  const auto table = TableFrom(space, [&](const std::vector<double>&) {
    return 1.0 + noise.UniformDouble() * 100.0;
  });
  const auto data = Subset(table, 60, 11);

  // Random forest prediction is the mean of its trees.
  {
    const auto rf = RandomForestModel::Fit(space, data, Hp(LearnerId::kRF, {{"n_estimators", 9}}));
    bool exact = true;
    for (const auto& c : table.configs()) {
      const Eigen::VectorXd x = rf->encoding().Encode(c.values);
      double sum = 0.0;
      for (const auto& t : rf->trees()) sum += t.Predict(x);
      exact &= rf->Predict(space, c) == sum / static_cast<double>(rf->trees().size());
    }
    v.Require(exact, "RF prediction differs from the tree mean");
  }

  // Zero training error on duplicate-free data.
  {
    const auto knn = KnnModel::Fit(space, data, Hp(LearnerId::kKNN, {{"n_neighbors", 1}}));
    const auto cart = CartModel::Fit(space, data, Hp(LearnerId::kCART, {{"min_samples_leaf", 1}}));
    double worst = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      worst = std::max(worst, std::abs(knn->Predict(space, data.configs[i]) - data.performance[i]));
      worst = std::max(worst, std::abs(cart->Predict(space, data.configs[i]) - data.performance[i]));
    }
    v.Require(worst == 0.0, "kNN(1)/CART training error " + Fmt(worst));
  }

  // SVR optimality conditions, checked on the residuals r = y - f(x).
  {
    int passed = 0;
    for (int t = 0; t < 50; ++t) {
      Rng rng(1000 + t);
      const long n = 5 + static_cast<long>(rng.UniformBelow(26));
      const long d = 1 + static_cast<long>(rng.UniformBelow(4));
      const Eigen::MatrixXd X = Eigen::MatrixXd::NullaryExpr(n, d, [&] { return rng.UniformDouble(); });
      std::vector<double> y(static_cast<std::size_t>(n));
      for (auto& val : y) val = rng.UniformDouble() * 4 - 2;
      KernelSpec k;
      k.type = t % 3 == 0 ? KernelSpec::Type::kLinear : KernelSpec::Type::kRbf;
      k.gamma = 0.5 + rng.UniformDouble() * 3;
      Eigen::MatrixXd K(n, n);
      for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) K(i, j) = k(X.row(i).transpose(), X.row(j).transpose());
      }
      SvrOptions opt;
      opt.C = std::pow(10.0, rng.UniformDouble() * 4 - 1);
      opt.epsilon = rng.UniformDouble() * 0.3;
      opt.tol = 1e-4;
      opt.shrinking = t % 2 == 0;
      const auto s = SolveSvr(K, y, opt);
      const Eigen::VectorXd beta = s.alpha - s.alpha_star;
      bool ok = std::abs(beta.sum()) <= 1e-9 * opt.C * static_cast<double>(n);
      for (long i = 0; i < n; ++i) {
        const double a = s.alpha(i), as = s.alpha_star(i);
        const double r = y[static_cast<std::size_t>(i)] - (K.row(i).dot(beta) - s.rho);
        ok &= a >= 0 && a <= opt.C && as >= 0 && as <= opt.C;
        if (a > 0) ok &= r >= opt.epsilon - opt.tol;
        if (a < opt.C) ok &= r <= opt.epsilon + opt.tol;
        if (as > 0) ok &= r <= -opt.epsilon + opt.tol;
        if (as < opt.C) ok &= r >= -opt.epsilon - opt.tol;
      }
      passed += ok;
    }
    v.Require(passed == 50, "SVR optimality holds on " + std::to_string(passed) + "/50");
  }

  // Tree predictions stay inside the training label range.
  {
    const auto [lo, hi] = std::minmax_element(data.performance.begin(), data.performance.end());
    const auto cart = CartModel::Fit(space, data, Hp(LearnerId::kCART, {{"min_samples_leaf", 3}}));
    const auto rf = RandomForestModel::Fit(space, data, Hp(LearnerId::kRF, {{"n_estimators", 15}}));
    Rng probe(17);
    const auto all = EnumerateValid(space);
    int outside = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto& c = all[probe.UniformBelow(all.size())];
      for (const Predictor* p : {static_cast<const Predictor*>(cart.get()),
                                 static_cast<const Predictor*>(rf.get())}) {
        const double y = p->Predict(space, c);
        outside += y < *lo || y > *hi;
      }
    }
    v.Require(outside == 0, std::to_string(outside) + " probe predictions out of range");
  }
}

// ---------------------------------------------------------------------------
// 6. Multiple-regression recovery

void MrRecovery(Verdict& v) {
  SyntheticSystemSpec spec;
  // b1 is a mandatory root option, as in a feature model. Without one, every
  // T2 row enables exactly two options and the intercept cannot be told
  // apart from a uniform shift of the binary effects.
  spec.space = GridSpaceJson("mr_recovery", 8, 3, 5);
  spec.space["constraints"] = {"b1"};
  spec.binary_main_effects = 5;
  spec.pairwise_interactions = 2;
  spec.interaction_pool = "binary";
  spec.numeric_main_effects = 1;
  spec.min_degree = 2;
  spec.degree_cap = 2;
  spec.noise = 0.0;
  spec.seed = 1;
  const auto sys = GenerateSyntheticSystem(spec);
  const auto bin = DrawBinary(sys.space, ParseBinaryStrategy("T2"), 0);
  const auto num = DrawNumeric(sys.space, ParseNumericStrategy("PBD(25,5)"), 0);
  const auto l = BuildLearningSet(sys.space, bin, num);
  LabeledSet data;
  for (const auto& c : l.configs) {
    data.configs.push_back(c);
    data.performance.push_back(sys.table.performance(*sys.table.Find(c)));
  }
  const auto mr = MrModel::Fit(sys.space, data, HyperParams::Defaults(LearnerId::kMR));
  const double e = MeanError(*mr, sys.table);
  v.Require(e < 1e-6, "mean error " + Fmt(e));
  v.Note("|L| = " + std::to_string(l.configs.size()) + ", mean error " + Fmt(e));
}

// ---------------------------------------------------------------------------
// 7. Statistics oracles

double PermutationP(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a[i] - b[i]);
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return std::abs(d[x]) < std::abs(d[y]); });
  std::vector<double> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[order[k]] = static_cast<double>(k + 1);
  double observed = 0.0;
  for (std::size_t i = 0; i < n; ++i) observed += d[i] > 0 ? rank[i] : 0.0;
  std::uint64_t hits = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) w += (mask >> i) & 1 ? rank[i] : 0.0;
    hits += w <= observed + 1e-9;
  }
  return static_cast<double>(hits) / std::ldexp(1.0, static_cast<int>(n));
}

void StatisticsOracles(Verdict& v) {
  Rng rng(77);
  double worst = 0.0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.UniformBelow(10);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Distinct absolute differences, no zeros.
      a[i] = rng.UniformDouble();
      b[i] = rng.UniformDouble() + (t % 4 == 0 ? 0.4 : 0.0);
    }
    const auto r = WilcoxonOneSided(a, b);
    v.Require(r.exact, "exact path not taken for n = " + std::to_string(n));
    worst = std::max(worst, std::abs(r.p_value - PermutationP(a, b)));
  }
  v.Require(worst <= 1e-9, "Wilcoxon deviation " + Fmt(worst));

  bool cliff_ok = true;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(1 + rng.UniformBelow(25)), b(1 + rng.UniformBelow(25));
    for (auto& x : a) x = static_cast<double>(rng.UniformBelow(8));
    for (auto& x : b) x = static_cast<double>(rng.UniformBelow(8));
    long diff = 0;
    for (double x : a) {
      for (double y : b) diff += (x > y) - (x < y);
    }
    cliff_ok &= ComputeCliffsDelta(a, b).delta ==
                static_cast<double>(diff) / static_cast<double>(a.size() * b.size());
  }
  v.Require(cliff_ok, "Cliff's delta differs from the pair count");
  const auto d = ComputeCliffsDelta(std::vector<double>{1, 3}, std::vector<double>{2, 4});
  v.Require(d.delta == -0.5 && MagnitudeName(d.magnitude) == "large",
            "(1,3) vs (2,4) gave " + Fmt(d.delta) + " " + MagnitudeName(d.magnitude));
}

// ---------------------------------------------------------------------------
// 8. Metric identities

void MetricIdentities(Verdict& v) {
  const auto space = GridSpace(2, 1, 4);
  const auto table = TableFrom(space, [](const std::vector<double>& x) { return 1 + x[0] + x[2]; });
  const auto knn = KnnModel::Fit(space, Labeled(table), Hp(LearnerId::kKNN, {{"n_neighbors", 1}}));
  v.Require(MeanError(*knn, table) == 0.0, "perfect predictor error is not 0");
  const double e = MeanRelativeError(std::vector<double>{100, 200}, std::vector<double>{110, 180});
  v.Require(e == 0.10, "(100,200) vs (110,180) gave " + Fmt(e));
  MeasurementTable t("s", "time");
  t.Add(Configuration{{0}}, 50);
  t.Add(Configuration{{1}}, 100);
  v.Require(PerformanceVariation(t) == 1.0, "variation(50, 100) != 1");
  const auto front = ParetoFront({{"a", 0.10, 0.05}, {"b", 0.20, 0.04}, {"c", 0.15, 0.06}});
  std::set<std::string> ids;
  for (const auto& p : front) ids.insert(p.id);
  v.Require(ids == std::set<std::string>{"a", "b"}, "Pareto front is not {a, b}");
}

// ---------------------------------------------------------------------------
// 9. End-to-end determinism

nlohmann::json FullPlan() {
  SyntheticSystemSpec spec;
  spec.space = GridSpaceJson("synthetic_grid", 4, 3, 5);  // 16 x 125 = 2000
  spec.binary_main_effects = 3;
  spec.numeric_main_effects = 2;
  spec.pairwise_interactions = 3;
  spec.higher_order_interactions = 1;
  spec.degree_cap = 2;
  spec.noise = 0.02;
  spec.seed = 7;
  return {{"system", {{"synthetic", spec.ToJson()}}},
          {"learners", {"MR", "CART", "RF", "kNN", "KRR", "SVR"}},
          {"binary", {"OW", "NegOW", "T2", "T3", "RB(_,OW)", "RB(_,T2)", "RB(_,T3)"}},
          {"numeric",
           {"OFAT", "BBD", "CCI", "PBD(9,3)", "PBD(25,5)", "PBD(49,7)", "PBD(125,5)", "DOD(50)",
            "DOD(125)", "RN(50)", "RN(125)"}},
          {"seeds", {0, 1}},
          {"tuning", {{"budget", 20}, {"folds", 5}}},
          {"master_seed", 2024}};
}

std::map<std::string, std::string> ReadDir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream f(e.path(), std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    out[e.path().filename().string()] = s.str();
  }
  return out;
}

void EndToEnd(Verdict& v) {
  const auto plan = ExperimentPlan::FromJson(FullPlan());
  const auto sys = LoadSystem(plan);
  v.Note(std::to_string(sys.table.size()) + " configurations");
  const fs::path base = fs::temp_directory_path() / "cfgperf_acceptance_e2e";
  fs::remove_all(base);
  std::vector<std::map<std::string, std::string>> outputs;
  for (int run = 0; run < 2; ++run) {
    const auto start = std::chrono::steady_clock::now();
    const auto cells = RunExperiment(plan, sys);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.Require(cells.size() == 462, "run produced " + std::to_string(cells.size()) + " cells");
    v.Require(secs < 1800.0, "run " + std::to_string(run + 1) + " took " + Fmt(secs) + " s");
    std::size_t failed = 0;
    for (const auto& c : cells) failed += !c.failure.empty();
    v.Note("run " + std::to_string(run + 1) + ": " + Fmt(secs) + " s, " +
           std::to_string(failed) + " failed cells");
    const fs::path dir = base / ("run" + std::to_string(run));
    EmitReport(cells, dir.string());
    std::ofstream(dir / "cells.csv", std::ios::binary) << [&] {
      std::ostringstream s;
      WriteCells(s, cells);
      return s.str();
    }();
    outputs.push_back(ReadDir(dir));
  }
  v.Require(outputs[0].size() >= 10, "report directory incomplete");
  v.Require(outputs[0] == outputs[1], "reports differ between runs");
  fs::remove_all(base);
}

// ---------------------------------------------------------------------------
// 10. Qualitative sanity

void QualitativeSanity(Verdict& v) {
  int mr_wins = 0, cart_wins = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    SyntheticSystemSpec spec;
    spec.space = GridSpaceJson("interacting", 8, 3, 5);
    spec.binary_main_effects = 4;
    spec.numeric_main_effects = 1;
    spec.pairwise_interactions = 6;
    spec.interaction_pool = "binary";
    spec.coefficient_min = 5.0;
    spec.coefficient_max = 20.0;
    spec.noise = 0.0;
    spec.seed = 100 + s;
    nlohmann::json j{{"system", {{"synthetic", spec.ToJson()}}},
                     {"learners", {"MR", "CART", "kNN"}},
                     {"binary", {"OW", "T2"}},
                     {"numeric", {"BBD"}},
                     {"tuning", {{"budget", 20}, {"folds", 5}}},
                     {"master_seed", s}};
    const auto plan = ExperimentPlan::FromJson(j);
    const auto cells = RunExperiment(plan, LoadSystem(plan));
    auto err = [&](const std::string& l, const std::string& b) {
      for (const auto& c : cells) {
        if (c.learner == l && c.binary == b) return c.mean_error;
      }
      return std::numeric_limits<double>::infinity();
    };
    mr_wins += err("MR", "T2") < err("MR", "OW");
    cart_wins += err("CART", "T2") < err("kNN", "T2");
  }
  v.Require(mr_wins >= 8, "MR with T2 beat MR with OW on " + std::to_string(mr_wins) + "/10");
  v.Require(cart_wins >= 8, "CART beat kNN on " + std::to_string(cart_wins) + "/10");
  v.Note("MR T2<OW " + std::to_string(mr_wins) + "/10, CART<kNN " + std::to_string(cart_wins) +
         "/10");
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Verdict&)> run;
};

}  // namespace
}  // namespace cfgperf

int main(int argc, char** argv) {
  using namespace cfgperf;
  CLI::App app{"cfgperf acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "criterion ids to run")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "numeric design sizes", 1, DesignSizes},
      {2, "binary sampling coverage", 10, BinaryCoverage},
      {3, "D-optimal quality", 30, DOptimalQuality},
      {4, "example regression tree", 1, ExampleTree},
      {5, "learner oracles", 60, LearnerOracles},
      {6, "MR recovery on noiseless data", 10, MrRecovery},
      {7, "statistics oracles", 5, StatisticsOracles},
      {8, "metric identities", 1, MetricIdentities},
      {9, "end-to-end determinism", 3600, EndToEnd},
      {10, "qualitative sanity", 600, QualitativeSanity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.Require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.Require(secs < c.budget_seconds, "over time budget of " + Fmt(c.budget_seconds) + " s");
    std::cout << (v.ok() ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
              << "): " << v.Summary() << " [" << Fmt(secs) << " s]" << std::endl;
    failed += !v.ok();
  }
  return failed == 0 ? 0 : 1;
}
