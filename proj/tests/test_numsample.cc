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
#include <map>
#include <set>

#include "cfgperf/error.h"
#include "cfgperf/numsample.h"
#include "test_util.h"

namespace cfgperf {
namespace {

using testing::GridSpace;
using testing::SpaceFromJson;
using Rows = std::vector<std::vector<double>>;

// Domain 0..8 on every option, so unit coordinates are value / 8.
ConfigurationSpace Cube(std::size_t k) { return GridSpace(0, k, 9); }

std::set<std::vector<double>> AsSet(const Rows& rows) { return {rows.begin(), rows.end()}; }

TEST(NumSample, NormalizeAndSnap) {
  const NumericOption eight{"x", {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  EXPECT_EQ(Normalize(eight, 4), 0.5);
  EXPECT_EQ(Normalize(eight, 0), 0.0);
  EXPECT_EQ(Normalize(eight, 8), 1.0);
  const NumericOption pow2{"y", {1, 2, 4, 8}};
  EXPECT_EQ(Denormalize(pow2, 0.6), 4.0);
  EXPECT_EQ(SnapToDomain(pow2, 3.0), 2.0);  // tie goes to the smaller member
  EXPECT_EQ(SnapToDomain(pow2, 3.1), 4.0);
  EXPECT_EQ(SnapToDomain(pow2, -5), 1.0);
  EXPECT_EQ(SnapToDomain(pow2, 100), 8.0);
}

TEST(NumSample, OfatSizesAndShape) {
  const auto s = SampleOneFactorAtATime(Cube(3), 5);
  EXPECT_EQ(s.size(), 13u);
  EXPECT_EQ(s.rows.front(), (std::vector<double>{4, 4, 4}));
  // Axis cross: every point differs from the center in at most one option.
  for (const auto& r : s.rows) {
    int off = 0;
    for (double v : r) off += v != 4;
    EXPECT_LE(off, 1);
  }
  EXPECT_EQ(SampleOneFactorAtATime(GridSpace(0, 1, 9), 2).size(), 2u);

  const auto two = SpaceFromJson(
      {{"numeric",
        {{{"name", "a"}, {"min", 0}, {"max", 10}, {"step", 1}},
         {{"name", "b"}, {"min", 0}, {"max", 10}, {"step", 1}}}}});
  EXPECT_EQ(AsSet(SampleOneFactorAtATime(two, 3).rows),
            AsSet({{5, 5}, {0, 5}, {10, 5}, {5, 0}, {5, 10}}));
}

TEST(NumSample, BoxBehnkenLayout) {
  const auto s = SampleBoxBehnken(Cube(3));
  EXPECT_EQ(s.size(), 13u);
  std::set<std::vector<double>> expect{{4, 4, 4}};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      for (double a : {0.0, 8.0}) {
        for (double b : {0.0, 8.0}) {
          std::vector<double> p{4, 4, 4};
          p[i] = a;
          p[j] = b;
          expect.insert(p);
        }
      }
    }
  }
  EXPECT_EQ(AsSet(s.rows), expect);
  EXPECT_EQ(SampleBoxBehnken(Cube(4)).size(), 25u);
  EXPECT_THROW(SampleBoxBehnken(Cube(2)), Error);
}

TEST(NumSample, BoxBehnkenOnAsymmetricDomainsStaysInDomain) {
  const auto space = SpaceFromJson({{"numeric",
                                     {{{"name", "a"}, {"values", {1, 2, 4, 8, 16}}},
                                      {{"name", "b"}, {"values", {0, 3}}},
                                      {{"name", "c"}, {"values", {-1, 0.5, 7}}}}}});
  for (const auto& r : SampleBoxBehnken(space).rows) {
    EXPECT_NO_THROW(space.CheckMembership(r, SubSpace::kNumeric));
  }
}

TEST(NumSample, CentralCompositeSizesAndGeometry) {
  EXPECT_EQ(SampleCentralComposite(Cube(3)).size(), 15u);
  EXPECT_EQ(SampleCentralComposite(GridSpace(0, 1, 9)).size(), 5u);
  // Corners at 0.5 +- 0.25, axial points on the faces.
  EXPECT_EQ(AsSet(SampleCentralComposite(Cube(2), 0.5).rows),
            AsSet({{2, 2}, {2, 6}, {6, 2}, {6, 6}, {0, 4}, {8, 4}, {4, 0}, {4, 8}, {4, 4}}));
  EXPECT_THROW(SampleCentralComposite(Cube(2), 1.0), Error);
  EXPECT_THROW(SampleCentralComposite(Cube(2), 0.0), Error);
  EXPECT_THROW(SampleCentralComposite(GridSpace(0, 21, 2)), Error);
}

TEST(NumSample, PlackettBurmanSizesAndLevels) {
  const auto& seeds = BuiltinPbdSeeds();
  const auto s = SamplePlackettBurman(Cube(3), FindPbdSeed(seeds, "9x3"));
  EXPECT_EQ(s.size(), 9u);
  for (std::size_t c = 0; c < 3; ++c) {
    std::set<double> vals;
    for (const auto& r : s.rows) vals.insert(r[c]);
    EXPECT_EQ(vals, (std::set<double>{0, 4, 8}));
  }
  EXPECT_EQ(SamplePlackettBurman(Cube(5), FindPbdSeed(seeds, "25x5")).size(), 25u);
  EXPECT_EQ(SamplePlackettBurman(Cube(2), FindPbdSeed(seeds, "25x5")).size(), 25u);
  EXPECT_THROW(SamplePlackettBurman(Cube(10), FindPbdSeed(seeds, "9x3")), Error);
}

TEST(NumSample, PlackettBurmanRowsAreRightShifts) {
  const auto& seed = FindPbdSeed(BuiltinPbdSeeds(), "9x3");
  const auto s = SamplePlackettBurman(Cube(3), seed);
  const std::size_t n = seed.vector.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      const int level = seed.vector[(c + n - i) % n];
      EXPECT_EQ(s.rows[i][c], level * 4.0) << i << "," << c;
    }
  }
}

TEST(NumSample, BundledSeedFileMatchesBuiltinTableAndIsBalanced) {
  const auto file = LoadPbdSeeds(std::string(CFGPERF_DATA_DIR) + "/pbd_seeds.json");
  const auto& builtin = BuiltinPbdSeeds();
  ASSERT_EQ(file.size(), builtin.size());
  for (std::size_t i = 0; i < file.size(); ++i) {
    EXPECT_EQ(file[i].id(), builtin[i].id());
    EXPECT_EQ(file[i].vector, builtin[i].vector);
    std::map<int, int> counts;
    for (int v : builtin[i].vector) counts[v]++;
    EXPECT_EQ(counts.size(), builtin[i].levels);
    for (auto [level, n] : counts) {
      EXPECT_EQ(static_cast<std::size_t>(n), builtin[i].configs / builtin[i].levels);
    }
  }
  // Balance survives the shifts: in every design column each level occurs
  // configs/levels times.
  for (const auto& seed : builtin) {
    const std::size_t n = seed.vector.size();
    for (std::size_t c = 0; c < std::min<std::size_t>(n, 8); ++c) {
      std::map<int, int> counts;
      for (std::size_t i = 0; i < n; ++i) counts[seed.vector[(c + n - i) % n]]++;
      for (auto [level, k] : counts) EXPECT_EQ(static_cast<std::size_t>(k), n / seed.levels);
    }
  }
}

TEST(NumSample, PbdSeedParsingRejectsBadInput) {
  EXPECT_THROW(ParsePbdSeeds(R"([{"id":"9x3","levels":3,"vector":[0,1,2]}])"), Error);
  EXPECT_THROW(ParsePbdSeeds(R"([{"id":"3x3","levels":3,"vector":[0,1,3]}])"), Error);
  EXPECT_THROW(ParsePbdSeeds("not json"), Error);
}

TEST(NumSample, DOptimalLineExample) {
  Eigen::MatrixXd x(5, 2);
  for (int i = 0; i < 5; ++i) x.row(i) << 1.0, i * 0.25;
  DOptimalOptions opt;
  opt.size = 2;
  const auto r = SelectDOptimal(x, opt);
  EXPECT_EQ(r.selected, (std::vector<std::size_t>{0, 4}));
  opt.size = 5;
  EXPECT_EQ(SelectDOptimal(x, opt).selected, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

double BruteBestLogDet(const Eigen::MatrixXd& x, std::size_t size) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
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

TEST(NumSample, DOptimalCloseToBruteForceAndMonotone) {
  Rng rng(5);
  int good = 0;
  const int kInstances = 30;
  for (int t = 0; t < kInstances; ++t) {
    const std::size_t n = 6 + rng.UniformBelow(7);
    const std::size_t size = 3 + rng.UniformBelow(3);
    Eigen::MatrixXd x(static_cast<long>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
      x.row(static_cast<long>(i)) << 1.0, rng.UniformDouble() * 2 - 1,
          rng.UniformDouble() * 2 - 1;
    }
    DOptimalOptions opt;
    opt.size = size;
    opt.seed = t;
    const auto r = SelectDOptimal(x, opt);
    EXPECT_NEAR(r.log_det, LogDetInformation(x, r.selected), 1e-9);
    for (const auto& rs : r.restarts) {
      if (!rs.singular) {
        EXPECT_GE(rs.final_log_det, rs.initial_log_det - 1e-12);
      }
    }
    good += std::exp(r.log_det - BruteBestLogDet(x, size)) >= 0.95;
  }
  EXPECT_GE(good, kInstances * 9 / 10);
}

TEST(NumSample, DOptimalSampleSizeAndDeterminism) {
  DOptimalSpec spec;
  spec.size = 12;
  spec.seed = 3;
  const auto a = SampleDOptimal(Cube(3), spec);
  EXPECT_EQ(a.size(), 12u);
  EXPECT_EQ(a.rows, SampleDOptimal(Cube(3), spec).rows);
  EXPECT_TRUE(std::is_sorted(a.rows.begin(), a.rows.end()));
  spec.size = 5;  // fewer than the 7 quadratic columns
  EXPECT_THROW(SampleDOptimal(Cube(3), spec), Error);
}

TEST(NumSample, ModelMatrixColumns) {
  EXPECT_EQ(ModelColumns(3, ModelTerms::kLinear), 4u);
  EXPECT_EQ(ModelColumns(3, ModelTerms::kQuadratic), 7u);
  EXPECT_EQ(ModelColumns(3, ModelTerms::kFullQuadratic), 10u);
  const auto m = BuildModelMatrix({{0.0, 1.0}}, ModelTerms::kFullQuadratic);
  ASSERT_EQ(m.cols(), 6);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(0, 1), -1.0);
  EXPECT_EQ(m(0, 2), 1.0);
}

TEST(NumSample, RandomNumeric) {
  const auto space = Cube(3);
  const auto a = SampleRandomNumeric(space, 125, 9);
  EXPECT_EQ(a.size(), 125u);
  EXPECT_EQ(AsSet(a.rows).size(), 125u);
  EXPECT_EQ(a.rows, SampleRandomNumeric(space, 125, 9).rows);
  const auto all = EnumerateRows(space, SubSpace::kNumeric);
  testing::ReferenceXoshiro g(9);
  auto idx = testing::ReferencePartialShuffle(all.size(), 125, g);
  std::sort(idx.begin(), idx.end());
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(a.rows[i], all[idx[i]]);
  EXPECT_EQ(SampleRandomNumeric(space, all.size(), 1).rows, all);
  EXPECT_THROW(SampleRandomNumeric(space, all.size() + 1, 1), Error);
}

TEST(NumSample, ConstraintsDropDesignPointsWithWarning) {
  const auto space = GridSpace(0, 3, 9, {"x0 + x1 > 0"});
  const auto s = SampleBoxBehnken(space);
  EXPECT_EQ(s.size(), 12u);
  EXPECT_FALSE(s.warnings.empty());
  for (const auto& r : s.rows) EXPECT_TRUE(space.IsValidIn(r, SubSpace::kNumeric));
}

TEST(NumSample, EveryDesignValueIsADomainMember) {
  const auto space = LoadSpace(std::string(CFGPERF_DATA_DIR) + "/models/javagc_like.json");
  NumericStrategySpec spec;
  for (auto kind : {NumericStrategySpec::Kind::kOfat, NumericStrategySpec::Kind::kBoxBehnken,
                    NumericStrategySpec::Kind::kCentralComposite,
                    NumericStrategySpec::Kind::kPlackettBurman,
                    NumericStrategySpec::Kind::kRandom}) {
    spec.kind = kind;
    spec.pbd_seed = "49x7";
    for (const auto& r : SampleNumeric(space, spec).rows) {
      EXPECT_NO_THROW(space.CheckMembership(r, SubSpace::kNumeric));
    }
  }
}

}  // namespace
}  // namespace cfgperf
