// Copyright 2026 The glyphbreak Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glyphbreak/rng.hpp"

#include <array>
#include <set>

#include "gtest/gtest.h"

namespace glyphbreak {
namespace {

TEST(SplitMix64Test, MatchesReferenceStream) {
  // First outputs of the reference splitmix64.c for seed 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng(), 0x06C45D188009454FULL);
}

TEST(SplitMix64Test, BelowStaysInRangeAndCoversIt) {
  SplitMix64 rng(42);
  std::array<int, 7> seen{};
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.Below(7);
    ASSERT_LT(v, 7u);
    ++seen[v];
  }
  for (int count : seen) EXPECT_NEAR(count, 1000, 150);
  EXPECT_THROW(rng.Below(0), InvalidArgument);
}

TEST(SplitMix64Test, UnitIsHalfOpen) {
  SplitMix64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(DeriveSeedTest, DependsOnBothInputs) {
  EXPECT_EQ(DeriveSeed(1, 2), DeriveSeed(1, 2));
  EXPECT_NE(DeriveSeed(1, 2), DeriveSeed(1, 3));
  EXPECT_NE(DeriveSeed(1, 2), DeriveSeed(2, 2));
  EXPECT_NE(DeriveSeed(0, 0), 0u);
}

TEST(SampleWithoutReplacementTest, DistinctSortedAndDeterministic) {
  for (std::size_t n = 0; n < 30; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      SplitMix64 a(n * 100 + k), b(n * 100 + k);
      const auto picks = SampleWithoutReplacement(n, k, a);
      EXPECT_EQ(picks, SampleWithoutReplacement(n, k, b));
      ASSERT_EQ(picks.size(), k);
      EXPECT_TRUE(std::is_sorted(picks.begin(), picks.end()));
      EXPECT_EQ(std::set<std::size_t>(picks.begin(), picks.end()).size(), k);
      for (auto p : picks) EXPECT_LT(p, n);
    }
  }
  SplitMix64 rng(1);
  EXPECT_THROW(SampleWithoutReplacement(3, 4, rng), InvalidArgument);
}

TEST(SampleWithoutReplacementTest, EveryIndexEquallyLikely) {
  SplitMix64 rng(9);
  std::array<int, 10> hits{};
  constexpr int kTrials = 20000;
  for (int t = 0; t < kTrials; ++t) {
    for (auto p : SampleWithoutReplacement(10, 3, rng)) ++hits[p];
  }
  // Expected 6000 each; 5 sigma is about 330.
  for (int h : hits) EXPECT_NEAR(h, kTrials * 3 / 10, 330);
}

}  // namespace
}  // namespace glyphbreak
