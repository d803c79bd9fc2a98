/*
 * Copyright 2026 The rfperm Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rfperm/muting.h"

#include <algorithm>

#include "gtest/gtest.h"
#include "rfperm/errors.h"
#include "rfperm/rng.h"

namespace rfperm {
namespace {

Dataset FiveColumns(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> cols(5, std::vector<double>(n));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < 4; ++j) cols[j][i] = rng.Normal();
    cols[4][i] = static_cast<double>(rng.Below(3));
    y[i] = rng.Normal();
  }
  return Dataset(std::move(cols), std::move(y),
                 {FeatureKind::Numeric(), FeatureKind::Numeric(),
                  FeatureKind::Numeric(), FeatureKind::Numeric(),
                  FeatureKind::Categorical(3)});
}

TEST(MutingTest, ExplicitReversal) {
  const Dataset d({{1, 2, 3}, {7, 8, 9}}, {0, 1, 2},
                  {FeatureKind::Numeric(), FeatureKind::Numeric()});
  const std::vector<std::size_t> reverse{2, 1, 0};
  const Dataset m = ApplyRowPermutation(d, FeatureSubset::Single(0), reverse);
  EXPECT_EQ(std::vector<double>(m.column(0).begin(), m.column(0).end()),
            (std::vector<double>{3, 2, 1}));
  EXPECT_EQ(std::vector<double>(m.column(1).begin(), m.column(1).end()),
            (std::vector<double>{7, 8, 9}));
  EXPECT_EQ(std::vector<double>(m.response().begin(), m.response().end()),
            (std::vector<double>{0, 1, 2}));
}

TEST(MutingTest, IdentityPermutationIsIdentity) {
  const Dataset d = FiveColumns(10, 1);
  std::vector<std::size_t> identity(10);
  for (std::size_t i = 0; i < 10; ++i) identity[i] = i;
  EXPECT_EQ(ApplyRowPermutation(d, FeatureSubset({0, 4}), identity), d);
}

TEST(MutingTest, ExcludeDropsColumns) {
  const Dataset d = FiveColumns(10, 2);
  const Dataset m = MuteFeatures(d, FeatureSubset({1, 4}), ExcludeFeatures{});
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.names(), (std::vector<std::string>{"x1", "x3", "x4"}));
  EXPECT_EQ(m.kinds().size(), 3u);
  EXPECT_TRUE(std::none_of(m.kinds().begin(), m.kinds().end(),
                           [](const FeatureKind& k) { return k.is_categorical(); }));
  EXPECT_THROW(MuteFeatures(d, FeatureSubset::All(5), ExcludeFeatures{}),
               ArgumentError);
}

TEST(MutingTest, SharedPermutationKeepsRowsOfSubsetTogether) {
  const Dataset d = FiveColumns(50, 3);
  const Dataset m = MuteFeatures(d, FeatureSubset({0, 2}), PermuteRows{11});
  // Each muted row (x1, x3) must be an original row pair.
  for (std::size_t i = 0; i < d.rows(); ++i) {
    bool found = false;
    for (std::size_t r = 0; r < d.rows() && !found; ++r) {
      found = d.at(r, 0) == m.at(i, 0) && d.at(r, 2) == m.at(i, 2);
    }
    EXPECT_TRUE(found) << "row " << i;
  }
  EXPECT_EQ(MuteFeatures(d, FeatureSubset({0, 2}), PermuteRows{11}), m);
}

TEST(MutingTest, KnockoffSubstitution) {
  const Dataset d = FiveColumns(4, 4);
  const Dataset m = MuteFeatures(d, FeatureSubset({1, 4}),
                                 KnockoffColumns{{{9, 9, 9, 9}, {0, 1, 2, 0}}});
  EXPECT_EQ(m.at(2, 1), 9.0);
  EXPECT_EQ(m.at(2, 4), 2.0);
  EXPECT_EQ(m.at(2, 0), d.at(2, 0));
  EXPECT_THROW(MuteFeatures(d, FeatureSubset({1, 4}), KnockoffColumns{{{9, 9, 9, 9}}}),
               ArgumentError);
  EXPECT_THROW(MuteFeatures(d, FeatureSubset({1}), KnockoffColumns{{{9, 9}}}),
               ArgumentError);
  EXPECT_THROW(MuteFeatures(d, FeatureSubset({4}), KnockoffColumns{{{0, 1, 5, 0}}}),
               ArgumentError);
}

TEST(MutingTest, AlignTestSetFollowsStrategy) {
  const Dataset test = FiveColumns(5, 5);
  EXPECT_EQ(AlignTestSet(test, FeatureSubset({0}), ExcludeFeatures{}).cols(), 4u);
  EXPECT_EQ(AlignTestSet(test, FeatureSubset({0}), PermuteRows{1}), test);
}

TEST(MutingPropertyTest, MarginalsAndResponseUnchanged) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.Below(40);
    const Dataset d = FiveColumns(n, rng());
    std::vector<std::size_t> subset;
    for (std::size_t j = 0; j < 5; ++j) {
      if (rng.Below(2)) subset.push_back(j);
    }
    if (subset.empty()) subset.push_back(rng.Below(5));
    const FeatureSubset s(subset);
    const Dataset m = MuteFeatures(d, s, PermuteRows{rng()});
    ASSERT_TRUE(std::equal(d.response().begin(), d.response().end(),
                           m.response().begin()));
    for (std::size_t j = 0; j < 5; ++j) {
      std::vector<double> a(d.column(j).begin(), d.column(j).end());
      std::vector<double> b(m.column(j).begin(), m.column(j).end());
      if (!s.contains(j)) {
        ASSERT_EQ(a, b);
      } else {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        ASSERT_EQ(a, b);
      }
    }
    const Dataset e = MuteFeatures(d, FeatureSubset::Single(0), ExcludeFeatures{});
    ASSERT_TRUE(std::equal(d.response().begin(), d.response().end(),
                           e.response().begin()));
  }
}

}  // namespace
}  // namespace rfperm
