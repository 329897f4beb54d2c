// Copyright 2026 The kgenrich Authors.
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

#include "kgenrich/hindex.h"

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.h"

namespace kgenrich {
namespace {

using Citations = std::vector<int64_t>;

struct Case {
  Citations citations;
  int64_t h;
};

class HIndexExamples : public ::testing::TestWithParam<Case> {};

TEST_P(HIndexExamples, AllMethodsAgree) {
  const Case& c = GetParam();
  EXPECT_EQ(HIndexSorted(c.citations), c.h);
  EXPECT_EQ(HIndexDefinition(c.citations), c.h);
  EXPECT_EQ(HIndexCounting(c.citations), c.h);
  EXPECT_EQ(HIndexChecked(c.citations), c.h);
  EXPECT_EQ(oracle::HIndex(c.citations), c.h);
}

INSTANTIATE_TEST_SUITE_P(Examples, HIndexExamples,
                         ::testing::Values(Case{{}, 0}, Case{{10, 10, 10}, 3}, Case{{3, 0, 6, 1, 5}, 3},
                                           Case{{1, 1}, 1}, Case{{0, 0, 0}, 0}, Case{{100}, 1},
                                           Case{{4, 4, 4, 4}, 4}, Case{{5, 5, 5, 5}, 4}));

TEST(HIndexTest, NegativeCitationsAreInputErrors) {
  Citations bad = {1, -1};
  EXPECT_THROW(HIndexSorted(bad), InputError);
  EXPECT_THROW(HIndexDefinition(bad), InputError);
  EXPECT_THROW(HIndexCounting(bad), InputError);
  EXPECT_THROW(HIndexChecked(bad), InputError);
}

// Property: agreement with the oracle, permutation invariance, monotonicity
// and bounds on random arrays.
TEST(HIndexPropertyTest, RandomArrays) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    Citations c(rng() % 120);
    for (auto& x : c) x = static_cast<int64_t>(rng() % (i % 3 == 0 ? 10 : 400));
    int64_t h = HIndexChecked(c);
    ASSERT_EQ(h, oracle::HIndex(c));
    EXPECT_GE(h, 0);
    EXPECT_LE(h, static_cast<int64_t>(c.size()));
    if (!c.empty()) EXPECT_LE(h, *std::max_element(c.begin(), c.end()));

    Citations shuffled = c;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(HIndexChecked(shuffled), h);

    Citations appended = c;
    appended.push_back(static_cast<int64_t>(rng() % 400));
    EXPECT_GE(HIndexChecked(appended), h);
    if (!c.empty()) {
      Citations bumped = c;
      bumped[rng() % c.size()] += 1 + static_cast<int64_t>(rng() % 5);
      EXPECT_GE(HIndexChecked(bumped), h);
    }
  }
}

TEST(AuthorHIndexTest, PerAuthorWithDuplicatesAndUnknownPapers) {
  std::vector<AuthorshipTriple> rows = {{"P1", "A1", "F1", 2000}, {"P1", "A1", "F2", 2000},
                                        {"P2", "A1", std::nullopt, 2001}, {"P3", "A1", std::nullopt, 2001},
                                        {"P3", "A2", std::nullopt, 2001}, {"P9", "A2", std::nullopt, 2001}};
  std::unordered_map<std::string, int64_t> cites = {{"P1", 5}, {"P2", 2}, {"P3", 1}};
  std::vector<std::string> all = {"A3", "A1"};
  HIndexStats stats;
  auto out = ComputeAuthorHIndex(rows, cites, all, &stats);
  std::vector<AuthorHIndex> expected = {{"A1", 2, 3}, {"A2", 1, 1}, {"A3", 0, 0}};
  EXPECT_EQ(out, expected);
  EXPECT_EQ(stats.duplicate_authorships, 1);
  EXPECT_EQ(stats.unknown_papers, 1);
  EXPECT_EQ(stats.authors, 3);
}

}  // namespace
}  // namespace kgenrich
