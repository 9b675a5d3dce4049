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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cfgperf/error.h"
#include "cfgperf/learners.h"
#include "cfgperf/predictor.h"
#include "test_util.h"

namespace cfgperf {
namespace {

using testing::GridSpace;
using testing::Labeled;
using testing::SpaceFromJson;
using testing::TableFrom;

HyperParams Hp(LearnerId id, const nlohmann::json& values = nlohmann::json::object()) {
  return HyperParams(id, values);
}

// Subset of a table picked by a seeded draw.
LabeledSet Subset(const MeasurementTable& t, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto idx = PartialShuffle(t.size(), n, rng);
  std::sort(idx.begin(), idx.end());
  LabeledSet out;
  for (auto i : idx) {
    out.configs.push_back(t.config(i));
    out.performance.push_back(t.performance(i));
  }
  return out;
}

TEST(Encoding, NormalizesNumericAndKeepsOrder) {
  const auto space = SpaceFromJson(
      {{"binary", {"a", "b"}},
       {"numeric", {{{"name", "n"}, {"min", 0}, {"max", 8}, {"step", 1}}}}});
  const FeatureEncoding enc(space, true);
  EXPECT_EQ(enc.Encode(std::vector<double>{1, 0, 4}), Eigen::Vector3d(1, 0, 0.5));
  EXPECT_EQ(enc.Encode(std::vector<double>{0, 1, 0}), Eigen::Vector3d(0, 1, 0));
  const FeatureEncoding raw(space, false);
  EXPECT_EQ(raw.Encode(std::vector<double>{1, 0, 4}), Eigen::Vector3d(1, 0, 4));
  EXPECT_EQ(FeatureEncoding::FromJson(enc.ToJson()).Encode(std::vector<double>{1, 1, 2}),
            enc.Encode(std::vector<double>{1, 1, 2}));
}

TEST(HyperParamsTest, DefaultsAndValidation) {
  for (auto id : kAllLearners) {
    const auto d = HyperParams::Defaults(id);
    for (const auto& key : HyperParams::Keys(id)) EXPECT_TRUE(d.values().contains(key));
  }
  EXPECT_THROW(Hp(LearnerId::kKNN, {{"n_neighbors", 0}}), Error);
  EXPECT_THROW(Hp(LearnerId::kKRR, {{"alpha", -1}}), Error);
  EXPECT_THROW(Hp(LearnerId::kCART, {{"splitter", "worst"}}), Error);
  EXPECT_THROW(Hp(LearnerId::kSVR, {{"gamma", 1}}), Error);
  EXPECT_EQ(ParseLearner("knn"), LearnerId::kKNN);
  EXPECT_THROW(ParseLearner("dnn"), Error);
}

// ---------------------------------------------------------------------------
// CART

ConfigurationSpace ExampleTreeSpace() {
  return SpaceFromJson(
      {{"binary", {"o_Bin1"}},
       {"numeric", {{{"name", "o_Num1"}, {"min", 0}, {"max", 40}, {"step", 10}}}}});
}

TEST(Cart, HandBuiltExampleTree) {
  const auto space = ExampleTreeSpace();
  // o_Bin1 off: 100; on: o_Num1 <= 20 gives 200, otherwise 250.
  CartTree tree({{0, 0.5, 1, 2, 0.0},
                 {-1, 0.0, -1, -1, 100.0},
                 {1, 20.0, 3, 4, 0.0},
                 {-1, 0.0, -1, -1, 200.0},
                 {-1, 0.0, -1, -1, 250.0}});
  const CartModel model(HyperParams::Defaults(LearnerId::kCART), FeatureEncoding(space, false),
                        tree);
  EXPECT_EQ(model.Predict(space, Configuration{{1, 30}}), 250.0);
  EXPECT_EQ(model.Predict(space, Configuration{{1, 10}}), 200.0);
  for (double n : {0.0, 10.0, 20.0, 30.0, 40.0}) {
    EXPECT_EQ(model.Predict(space, Configuration{{0, n}}), 100.0);
  }
  EXPECT_THROW(CartTree({{0, 0.5, 1, 7, 0.0}, {-1, 0, -1, -1, 1}}), Error);
}

TEST(Cart, LearnsTheExampleTreeFromItsOwnLabels) {
  const auto space = ExampleTreeSpace();
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return v[0] < 0.5 ? 100.0 : (v[1] <= 20 ? 200.0 : 250.0);
  });
  const auto model = CartModel::Fit(space, Labeled(table), HyperParams::Defaults(LearnerId::kCART));
  EXPECT_EQ(model->Predict(space, Configuration{{1, 30}}), 250.0);
  EXPECT_EQ(model->Predict(space, Configuration{{0, 30}}), 100.0);
  EXPECT_EQ(model->tree().nodes().size(), 5u);
}

TEST(Cart, ZeroTrainingErrorAndBoundedPredictions) {
  const auto space = GridSpace(3, 2, 5);
  Rng noise(3);
  const auto table = TableFrom(space, [&](const std::vector<double>&) {
    return 1.0 + noise.UniformDouble() * 100.0;
  });
  const auto data = Subset(table, 60, 11);
  for (const char* splitter : {"best", "random"}) {
    const auto model = CartModel::Fit(space, data,
                                      Hp(LearnerId::kCART, {{"splitter", splitter}}));
    for (std::size_t i = 0; i < data.size(); ++i) {
      EXPECT_EQ(model->Predict(space, data.configs[i]), data.performance[i]) << splitter;
    }
  }
  const auto [lo, hi] = std::minmax_element(data.performance.begin(), data.performance.end());
  const auto cart = CartModel::Fit(space, data,
                                   Hp(LearnerId::kCART, {{"min_samples_leaf", 4},
                                                         {"max_features", 0.5},
                                                         {"random_state", 5}}));
  const auto rf = RandomForestModel::Fit(space, data, Hp(LearnerId::kRF, {{"n_estimators", 15}}));
  Rng probe(17);
  const auto all = EnumerateValid(space);
  for (int i = 0; i < 1000; ++i) {
    const auto& c = all[probe.UniformBelow(all.size())];
    for (const Predictor* p : {static_cast<const Predictor*>(cart.get()),
                               static_cast<const Predictor*>(rf.get())}) {
      const double y = p->Predict(space, c);
      EXPECT_GE(y, *lo);
      EXPECT_LE(y, *hi);
    }
  }
}

TEST(Cart, MinSamplesLeafIsRespected) {
  const auto space = GridSpace(0, 1, 20);
  const auto table = TableFrom(space, [](const std::vector<double>& v) { return 1 + v[0]; });
  const auto model = CartModel::Fit(space, Labeled(table),
                                    Hp(LearnerId::kCART, {{"min_samples_leaf", 5}}));
  // Every leaf averages at least 5 distinct labels, so at most 4 leaves.
  int leaves = 0;
  for (const auto& n : model->tree().nodes()) leaves += n.feature < 0;
  EXPECT_LE(leaves, 4);
}

// ---------------------------------------------------------------------------
// Random forest

TEST(RandomForest, PredictionIsMeanOfTrees) {
  const auto space = GridSpace(3, 2, 4);
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return 1 + v[0] * 3 + v[1] * v[3] + std::sqrt(v[4] + 1);
  });
  const auto data = Subset(table, 40, 1);
  const auto rf = RandomForestModel::Fit(
      space, data, Hp(LearnerId::kRF, {{"n_estimators", 7}, {"max_features", 0.6}}));
  ASSERT_EQ(rf->trees().size(), 7u);
  for (const auto& c : table.configs()) {
    const Eigen::VectorXd x = rf->encoding().Encode(c.values);
    double sum = 0.0;
    for (const auto& t : rf->trees()) sum += t.Predict(x);
    EXPECT_EQ(rf->Predict(space, c), sum / 7.0);
  }
}

TEST(RandomForest, SingleTreeWithoutBootstrapEqualsCart) {
  const auto space = GridSpace(2, 2, 4);
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return 2 + v[0] + v[2] * v[3];
  });
  const auto rf = RandomForestModel::Fit(space, Labeled(table),
                                         Hp(LearnerId::kRF, {{"n_estimators", 1}}), false);
  const auto cart = CartModel::Fit(space, Labeled(table), HyperParams::Defaults(LearnerId::kCART));
  for (const auto& c : table.configs()) {
    EXPECT_EQ(rf->Predict(space, c), cart->Predict(space, c));
  }
}

TEST(RandomForest, DeterministicInRandomState) {
  const auto space = GridSpace(3, 1, 4);
  const auto table = TableFrom(space, [](const std::vector<double>& v) { return 1 + v[0] + v[3]; });
  auto fit = [&](int state) {
    return RandomForestModel::Fit(space, Labeled(table),
                                  Hp(LearnerId::kRF, {{"random_state", state}}))
        ->ToJson();
  };
  EXPECT_EQ(fit(1), fit(1));
  EXPECT_NE(fit(1), fit(2));
}

// ---------------------------------------------------------------------------
// kNN

TEST(Knn, EquidistantMeanAndNearestLabel) {
  const auto space = GridSpace(3, 0, 0);
  LabeledSet data{{Configuration{{1, 0, 0}}, Configuration{{0, 1, 0}}, Configuration{{0, 0, 1}}},
                  {1, 2, 3}};
  const auto knn = KnnModel::Fit(space, data, Hp(LearnerId::kKNN, {{"n_neighbors", 3}}));
  EXPECT_EQ(knn->Predict(space, Configuration{{0, 0, 0}}), 2.0);
  const auto one = KnnModel::Fit(space, data, Hp(LearnerId::kKNN, {{"n_neighbors", 1}}));
  EXPECT_EQ(one->Predict(space, Configuration{{0, 1, 1}}), 2.0);  // tie: earlier row
  EXPECT_THROW(KnnModel::Fit(space, data, Hp(LearnerId::kKNN, {{"n_neighbors", 4}})), Error);
}

TEST(Knn, FiveNearestOfThirteenPoints) {
  const auto space = GridSpace(0, 2, 11);
  Rng rng(13);
  const auto all = EnumerateValid(space);
  auto idx = PartialShuffle(all.size(), 14, rng);
  LabeledSet data;
  for (std::size_t i = 0; i < 13; ++i) {
    data.configs.push_back(all[idx[i]]);
    data.performance.push_back(1 + rng.UniformDouble() * 10);
  }
  const auto query = all[idx[13]];
  // Hand sort by Euclidean distance in normalized coordinates.
  std::vector<std::pair<double, std::size_t>> d;
  for (std::size_t i = 0; i < 13; ++i) {
    const double dx = (data.configs[i].values[0] - query.values[0]) / 10;
    const double dy = (data.configs[i].values[1] - query.values[1]) / 10;
    d.push_back({std::sqrt(dx * dx + dy * dy), i});
  }
  std::sort(d.begin(), d.end());
  double mean = 0.0, num = 0.0, den = 0.0;
  for (int k = 0; k < 5; ++k) {
    mean += data.performance[d[k].second] / 5;
    num += data.performance[d[k].second] / d[k].first;
    den += 1 / d[k].first;
  }
  const auto uni = KnnModel::Fit(space, data, HyperParams::Defaults(LearnerId::kKNN));
  EXPECT_NEAR(uni->Predict(space, query), mean, 1e-12);
  const auto dist = KnnModel::Fit(space, data, Hp(LearnerId::kKNN, {{"weights", "distance"}}));
  EXPECT_NEAR(dist->Predict(space, query), num / den, 1e-12);
  // Exact hit with distance weights returns the stored label.
  EXPECT_EQ(dist->Predict(space, data.configs[4]), data.performance[4]);
}

TEST(Knn, OneNeighbourHasZeroTrainingError) {
  const auto space = GridSpace(2, 2, 6);
  Rng noise(8);
  const auto table = TableFrom(space, [&](const std::vector<double>&) {
    return 1 + noise.UniformDouble();
  });
  const auto data = Subset(table, 50, 2);
  for (double p : {1.0, 2.0, 3.5}) {
    const auto knn = KnnModel::Fit(space, data, Hp(LearnerId::kKNN, {{"n_neighbors", 1}, {"p", p}}));
    for (std::size_t i = 0; i < data.size(); ++i) {
      EXPECT_EQ(knn->Predict(space, data.configs[i]), data.performance[i]);
    }
  }
}

// ---------------------------------------------------------------------------
// KRR

TEST(Krr, LinearKernelApproachesLeastSquares) {
  const auto space = GridSpace(3, 2, 5);
  Rng noise(21);
  const auto table = TableFrom(space, [&](const std::vector<double>& v) {
    return 10 + 2 * v[0] - v[1] + 0.5 * v[3] * v[4] + noise.UniformDouble();
  });
  const auto data = Subset(table, 40, 4);
  const auto krr = KrrModel::Fit(space, data,
                                 Hp(LearnerId::kKRR, {{"alpha", 1e-8}, {"kernel", "linear"}}));
  // Normal equations on the normalized features, without intercept.
  const FeatureEncoding enc(space, true);
  const Eigen::MatrixXd X = enc.EncodeAll(data.configs);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(data.performance.data(),
                                                              static_cast<long>(data.size()));
  const Eigen::VectorXd w = (X.transpose() * X).ldlt().solve(X.transpose() * y);
  double worst = 0.0;
  for (const auto& c : table.configs()) {
    const double ols = enc.Encode(c.values).dot(w);
    worst = std::max(worst, std::abs(krr->Predict(space, c) - ols) / std::abs(ols));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Krr, RbfInterpolatesAndLargeAlphaShrinks) {
  const auto space = GridSpace(2, 1, 5);
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return 3 + v[0] + v[1] * v[2];
  });
  const auto data = Labeled(table);
  const auto exact = KrrModel::Fit(space, data,
                                   Hp(LearnerId::kKRR, {{"alpha", 0.0}, {"kernel", "rbf"},
                                                        {"gamma", 1.0}}));
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_NEAR(exact->Predict(space, data.configs[i]), data.performance[i], 1e-6);
  }
  const auto flat = KrrModel::Fit(space, data, Hp(LearnerId::kKRR, {{"alpha", 1e12}}));
  for (const auto& c : data.configs) EXPECT_LT(std::abs(flat->Predict(space, c)), 1e-6);
}

TEST(Krr, SingularGramWithoutRidgeIsAnError) {
  const auto space = GridSpace(3, 0, 0);
  const auto table = TableFrom(space, [](const std::vector<double>& v) { return 1 + v[0]; });
  try {
    KrrModel::Fit(space, Labeled(table), Hp(LearnerId::kKRR, {{"alpha", 0.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumerical);
  }
}

// ---------------------------------------------------------------------------
// SVR

// Independent check of the epsilon-SVR optimality conditions in terms of the
// residual r_i = y_i - f(x_i).
void ExpectKkt(const Eigen::MatrixXd& K, const std::vector<double>& y,
               const SvrSolution& s, double C, double eps, double tol) {
  const long n = K.rows();
  const Eigen::VectorXd beta = s.alpha - s.alpha_star;
  EXPECT_NEAR(beta.sum(), 0.0, 1e-9 * C * static_cast<double>(n));
  for (long i = 0; i < n; ++i) {
    const double a = s.alpha(i), as = s.alpha_star(i);
    ASSERT_GE(a, 0.0);
    ASSERT_LE(a, C);
    ASSERT_GE(as, 0.0);
    ASSERT_LE(as, C);
    const double r = y[static_cast<std::size_t>(i)] - (K.row(i).dot(beta) - s.rho);
    if (a > 0) {
      EXPECT_GE(r, eps - tol) << i;
    }
    if (a < C) {
      EXPECT_LE(r, eps + tol) << i;
    }
    if (as > 0) {
      EXPECT_LE(r, -eps + tol) << i;
    }
    if (as < C) {
      EXPECT_GE(r, -eps - tol) << i;
    }
  }
}

TEST(Svr, KktOnRandomSmallInstances) {
  for (int t = 0; t < 50; ++t) {
    Rng rng(1000 + t);
    const long n = 5 + static_cast<long>(rng.UniformBelow(26));
    const long d = 1 + static_cast<long>(rng.UniformBelow(4));
    const Eigen::MatrixXd X = Eigen::MatrixXd::NullaryExpr(n, d, [&] { return rng.UniformDouble(); });
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = rng.UniformDouble() * 4 - 2;
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
    ASSERT_TRUE(s.converged) << t;
    SCOPED_TRACE(t);
    ExpectKkt(K, y, s, opt.C, opt.epsilon, opt.tol);
  }
}

TEST(Svr, ShrinkingDoesNotChangeTheSolutionMuch) {
  Rng rng(4);
  const long n = 40;
  const Eigen::MatrixXd X = Eigen::MatrixXd::NullaryExpr(n, 2, [&] { return rng.UniformDouble(); });
  std::vector<double> y(n);
  for (long i = 0; i < n; ++i) y[i] = std::sin(4 * X(i, 0)) + X(i, 1);
  KernelSpec k;
  Eigen::MatrixXd K(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) K(i, j) = k(X.row(i).transpose(), X.row(j).transpose());
  }
  SvrOptions a;
  a.C = 10;
  a.epsilon = 0.05;
  a.tol = 1e-6;
  SvrOptions b = a;
  b.shrinking = false;
  const auto sa = SolveSvr(K, y, a), sb = SolveSvr(K, y, b);
  const Eigen::VectorXd fa = K * (sa.alpha - sa.alpha_star), fb = K * (sb.alpha - sb.alpha_star);
  for (long i = 0; i < n; ++i) EXPECT_NEAR(fa(i) - sa.rho, fb(i) - sb.rho, 1e-4);
}

TEST(Svr, ConstantLabelsGiveConstantPredictor) {
  const auto space = GridSpace(2, 1, 4);
  const auto table = TableFrom(space, [](const std::vector<double>&) { return 7.0; });
  const auto svr = SvrModel::Fit(space, Labeled(table), HyperParams::Defaults(LearnerId::kSVR));
  EXPECT_EQ(svr->num_support(), 0u);
  for (const auto& c : table.configs()) EXPECT_NEAR(svr->Predict(space, c), 7.0, 1e-12);
}

TEST(Svr, LinearDataStaysInsideTheTube) {
  const auto space = GridSpace(0, 2, 6);
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return 5 + 0.2 * v[0] + 0.1 * v[1];
  });
  const double eps = 0.05, tol = 1e-4;
  const auto svr = SvrModel::Fit(space, Labeled(table),
                                 Hp(LearnerId::kSVR, {{"C", 1000.0}, {"epsilon", eps},
                                                      {"tol", tol}}));
  for (std::size_t i = 0; i < table.size(); ++i) {
    EXPECT_LE(std::abs(svr->Predict(space, table.config(i)) - table.performance(i)), eps + tol);
  }
}

// ---------------------------------------------------------------------------
// MR

TEST(Mr, RecoversInterceptAndBinaryEffect) {
  const auto space = GridSpace(3, 1, 4);
  const auto table = TableFrom(space, [](const std::vector<double>& v) { return 5 + 3 * v[0]; });
  const auto mr = MrModel::Fit(space, Labeled(table), HyperParams::Defaults(LearnerId::kMR));
  ASSERT_EQ(mr->terms().size(), 2u);
  EXPECT_TRUE(mr->terms()[0].is_intercept());
  EXPECT_EQ(mr->terms()[1].Name(space.OptionNames()), "o0");
  EXPECT_NEAR(mr->coefficients()[0], 5.0, 1e-9);
  EXPECT_NEAR(mr->coefficients()[1], 3.0, 1e-9);
  EXPECT_NEAR(mr->Predict(space, Configuration{{1, 0, 1, 2}}), 8.0, 1e-9);
}

TEST(Mr, ConstantLabelsGiveInterceptOnly) {
  const auto space = GridSpace(2, 1, 3);
  const auto table = TableFrom(space, [](const std::vector<double>&) { return 4.0; });
  const auto mr = MrModel::Fit(space, Labeled(table), HyperParams::Defaults(LearnerId::kMR));
  EXPECT_EQ(mr->terms().size(), 1u);
  for (const auto& c : table.configs()) EXPECT_NEAR(mr->Predict(space, c), 4.0, 1e-12);
}

TEST(Mr, BinaryTimesSquaredNumericIsRepresentable) {
  const auto space = GridSpace(2, 2, 5);
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return 10 + 2 * v[0] * v[2] * v[2] + v[3];
  });
  const auto mr = MrModel::Fit(space, Labeled(table), HyperParams::Defaults(LearnerId::kMR));
  for (std::size_t i = 0; i < table.size(); ++i) {
    EXPECT_NEAR(mr->Predict(space, table.config(i)), table.performance(i),
                1e-9 * table.performance(i));
  }
  EXPECT_NE(mr->TermString().find("o0*x0^2"), std::string::npos) << mr->TermString();
}

TEST(Mr, RatioAndLogFunctionsAreGatedByFunctionTypes) {
  const auto space = GridSpace(0, 2, 6);
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return 1 + 4 * std::log(1 + v[0]) + v[1] / (1 + v[0]);
  });
  const auto full = MrModel::Fit(space, Labeled(table),
                                 Hp(LearnerId::kMR, {{"functionTypes", "full"}}));
  for (std::size_t i = 0; i < table.size(); ++i) {
    EXPECT_NEAR(full->Predict(space, table.config(i)), table.performance(i), 1e-8);
  }
  const auto poly = MrModel::Fit(space, Labeled(table), HyperParams::Defaults(LearnerId::kMR));
  for (const auto& term : poly->terms()) {
    for (const auto& f : term.factors) EXPECT_EQ(f.kind, MrFactor::Kind::kPower);
  }
}

// ---------------------------------------------------------------------------
// Shared contract

TEST(Predictors, SerializationRoundTripAndSpaceCheck) {
  const auto space = GridSpace(3, 2, 4);
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return 2 + v[0] + 0.5 * v[1] * v[3] + v[4] * v[4];
  });
  const auto data = Subset(table, 30, 9);
  const auto other = GridSpace(3, 2, 5);
  for (auto id : kAllLearners) {
    const auto p = Train(space, data, HyperParams::Defaults(id));
    const auto q = PredictorFromJson(p->ToJson());
    EXPECT_EQ(q->ToJson(), p->ToJson()) << LearnerName(id);
    for (const auto& c : table.configs()) {
      const double y = p->Predict(space, c);
      EXPECT_TRUE(std::isfinite(y));
      EXPECT_EQ(q->Predict(space, c), y) << LearnerName(id);
    }
    EXPECT_EQ(PredictBatch(*p, table.configs()), PredictBatchSerial(*p, table.configs()));
    try {
      p->Predict(other, Configuration{{0, 0, 0, 0, 4}});
      ADD_FAILURE() << "foreign space accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kIncompatible);
    }
  }
  EXPECT_THROW(PredictorFromJson({{"learner", "MR"}}), Error);
}

TEST(Predictors, TrainingIsDeterministic) {
  const auto space = GridSpace(3, 2, 4);
  const auto table = TableFrom(space, [](const std::vector<double>& v) {
    return 1 + v[0] * v[3] + v[4];
  });
  const auto data = Subset(table, 40, 3);
  for (auto id : kAllLearners) {
    EXPECT_EQ(Train(space, data, HyperParams::Defaults(id))->ToJson(),
              Train(space, data, HyperParams::Defaults(id))->ToJson())
        << LearnerName(id);
  }
}

}  // namespace
}  // namespace cfgperf
