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

#include <bit>
#include <set>

#include "cfgperf/binsample.h"
#include "cfgperf/error.h"
#include "test_util.h"

namespace cfgperf {
namespace {

using testing::GridSpace;
using Rows = std::vector<std::vector<double>>;

std::uint64_t Mask(const std::vector<double>& row) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] > 0.5) m |= std::uint64_t{1} << i;
  }
  return m;
}

// Every assignment of n bits that satisfies the space, by brute force.
std::vector<std::uint64_t> ValidMasks(const ConfigurationSpace& space) {
  const std::size_t n = space.num_binary();
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = (m >> i) & 1;
    if (space.IsValidIn(row, SubSpace::kBinary)) out.push_back(m);
  }
  return out;
}

Rows Singletons(std::initializer_list<std::initializer_list<int>> rows) {
  Rows out;
  for (auto r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

TEST(BinSample, OptionWiseUnconstrained) {
  const auto s = SampleOptionWise(GridSpace(3, 0, 0));
  EXPECT_EQ(s.rows, Singletons({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(s.provenance.strategy, "OW");
}

TEST(BinSample, OptionWiseImplication) {
  const auto s = SampleOptionWise(GridSpace(2, 0, 0, {"o0 => o1"}));
  EXPECT_EQ(s.rows, Singletons({{1, 1}, {0, 1}}));
}

TEST(BinSample, OptionWiseDeadOptionWarns) {
  const auto s = SampleOptionWise(GridSpace(2, 0, 0, {"!o1"}));
  EXPECT_EQ(s.rows, Singletons({{1, 0}}));
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings[0].find("o1"), std::string::npos);
}

TEST(BinSample, NegativeOptionWise) {
  EXPECT_EQ(SampleNegativeOptionWise(GridSpace(3, 0, 0)).rows,
            Singletons({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}));
  EXPECT_EQ(SampleNegativeOptionWise(GridSpace(1, 0, 0)).rows, Singletons({{0}, {1}}));
  const auto s = SampleNegativeOptionWise(GridSpace(3, 0, 0, {"!(o0 & o1)"}));
  // Without o2: {o0} and {o1} tie at one; the earlier row in enumeration wins.
  EXPECT_EQ(s.rows[2], (std::vector<double>{0, 1, 0}));
  EXPECT_FALSE(s.warnings.empty());
}

TEST(BinSample, NegativeOptionWiseMandatoryOptionWarns) {
  const auto s = SampleNegativeOptionWise(GridSpace(2, 0, 0, {"o0"}));
  EXPECT_EQ(s.rows, Singletons({{1, 0}, {1, 1}}));
  EXPECT_EQ(s.warnings.size(), 1u);
}

TEST(BinSample, TWiseSmallCases) {
  EXPECT_EQ(SampleTWise(GridSpace(3, 0, 0), 2).rows,
            Singletons({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
  EXPECT_EQ(SampleTWise(GridSpace(3, 0, 0), 3).rows, Singletons({{1, 1, 1}}));
  const auto s = SampleTWise(GridSpace(3, 0, 0, {"!(o0 & o1)"}), 2);
  EXPECT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.warnings.size(), 1u);
  EXPECT_THROW(SampleTWise(GridSpace(3, 0, 0), 4), Error);
  EXPECT_THROW(SampleTWise(GridSpace(3, 0, 0), 1), Error);
}

TEST(BinSample, TWiseSizeIsBinomialWhenUnconstrained) {
  EXPECT_EQ(SampleTWise(GridSpace(8, 0, 0), 2).size(), 28u);
  EXPECT_EQ(SampleTWise(GridSpace(8, 0, 0), 3).size(), 56u);
}

// Coverage, validity and minimality against brute force on random spaces.
TEST(BinSample, CoverageAgainstBruteForce) {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng.UniformBelow(10);  // 3..12
    const auto space =
        GridSpace(n, 0, 0, testing::RandomBinaryConstraints(n, rng.UniformBelow(n), rng));
    const auto valid = ValidMasks(space);
    if (valid.empty()) continue;
    auto min_with = [&](std::uint64_t want) {
      int best = 99;
      for (auto m : valid) {
        if ((m & want) == want) best = std::min(best, std::popcount(m));
      }
      return best;
    };
    auto check_members = [&](const SampleSet& s) {
      std::set<std::uint64_t> seen;
      for (const auto& r : s.rows) {
        EXPECT_TRUE(space.IsValidIn(r, SubSpace::kBinary));
        EXPECT_TRUE(seen.insert(Mask(r)).second) << "duplicate row";
      }
    };

    const auto ow = SampleOptionWise(space);
    check_members(ow);
    for (std::size_t o = 0; o < n; ++o) {
      const std::uint64_t bit = std::uint64_t{1} << o;
      const int best = min_with(bit);
      if (best == 99) continue;  // dead
      int chosen = 99;
      for (const auto& r : ow.rows) {
        if (Mask(r) & bit) chosen = std::min(chosen, std::popcount(Mask(r)));
      }
      EXPECT_EQ(chosen, best) << "trial " << trial << " option " << o;
    }

    const auto neg = SampleNegativeOptionWise(space);
    check_members(neg);
    std::uint64_t fullest = 0;
    for (auto m : valid) {
      if (std::popcount(m) > std::popcount(fullest)) fullest = m;
    }
    bool has_fullest_size = false;
    for (const auto& r : neg.rows) {
      has_fullest_size |= std::popcount(Mask(r)) == std::popcount(fullest);
    }
    EXPECT_TRUE(has_fullest_size);
    if (space.IsValidIn(std::vector<double>(n, 1.0), SubSpace::kBinary)) {
      EXPECT_EQ(neg.rows.back(), std::vector<double>(n, 1.0));
    }
    for (std::size_t o = 0; o < n; ++o) {
      const std::uint64_t bit = std::uint64_t{1} << o;
      bool can_disable = false;
      for (auto m : valid) can_disable |= !(m & bit);
      bool disabled = false;
      for (const auto& r : neg.rows) disabled |= !(Mask(r) & bit);
      EXPECT_EQ(disabled, can_disable) << "trial " << trial << " option " << o;
    }

    const auto t2 = SampleTWise(space, 2);
    check_members(t2);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::uint64_t want = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
        const int best = min_with(want);
        int chosen = 99;
        for (const auto& r : t2.rows) {
          if ((Mask(r) & want) == want) chosen = std::min(chosen, std::popcount(Mask(r)));
        }
        EXPECT_EQ(chosen, best) << "trial " << trial << " pair " << a << "," << b;
      }
    }
  }
}

TEST(BinSample, RandomMatchesReferenceDraw) {
  const auto space = GridSpace(3, 0, 0);  // 8 valid rows
  const auto s = SampleRandomBinary(space, 3, 42);
  const auto all = EnumerateRows(space, SubSpace::kBinary);
  testing::ReferenceXoshiro g(42);
  auto idx = testing::ReferencePartialShuffle(all.size(), 3, g);
  std::sort(idx.begin(), idx.end());
  Rows expect;
  for (auto i : idx) expect.push_back(all[i]);
  EXPECT_EQ(s.rows, expect);
  EXPECT_EQ(s.provenance.seed, 42u);
}

TEST(BinSample, RandomDeterminismAndBounds) {
  const auto space = GridSpace(6, 0, 0, {"o0 | o1"});
  const auto a = SampleRandomBinary(space, 10, 0);
  EXPECT_EQ(a.rows, SampleRandomBinary(space, 10, 0).rows);
  EXPECT_NE(a.rows, SampleRandomBinary(space, 10, 1).rows);
  const std::size_t total = CountValid(space, SubSpace::kBinary);
  EXPECT_EQ(SampleRandomBinary(space, total, 7).rows, EnumerateRows(space, SubSpace::kBinary));
  try {
    SampleRandomBinary(space, total + 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeTooLarge);
  }
}

TEST(BinSample, DispatchMatchesDirectCalls) {
  const auto space = GridSpace(4, 0, 0, {"o0 => o1"});
  BinaryStrategySpec spec;
  spec.kind = BinaryStrategySpec::Kind::kTWise;
  spec.t = 3;
  EXPECT_EQ(SampleBinary(space, spec).rows, SampleTWise(space, 3).rows);
  spec.kind = BinaryStrategySpec::Kind::kNegativeOptionWise;
  EXPECT_EQ(SampleBinary(space, spec).rows, SampleNegativeOptionWise(space).rows);
}

}  // namespace
}  // namespace cfgperf
