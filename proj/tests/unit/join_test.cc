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

#include "kgenrich/join.h"

#include <gtest/gtest.h>

#include <random>

#include "support/test_util.h"

namespace kgenrich {
namespace {

struct JoinResult {
  std::vector<AuthorshipTriple> out;
  std::vector<std::pair<AuthorshipTriple, std::string>> rejects;
  JoinStats stats;
};

JoinResult Join(const std::vector<PaperRecord>& papers, const std::vector<AuthorshipTriple>& triples,
                JoinOptions options = {}) {
  size_t pi = 0;
  size_t ti = 0;
  JoinResult r;
  r.stats = JoinTriplesWithYears(
      [&]() -> std::optional<PaperRecord> {
        if (pi == papers.size()) return std::nullopt;
        return papers[pi++];
      },
      [&]() -> std::optional<AuthorshipTriple> {
        if (ti == triples.size()) return std::nullopt;
        return triples[ti++];
      },
      options, [&](AuthorshipTriple&& t) { r.out.push_back(std::move(t)); },
      [&](const AuthorshipTriple& t, std::string_view why) { r.rejects.emplace_back(t, std::string(why)); });
  return r;
}

PaperRecord Paper(std::string id, std::optional<int> year) {
  PaperRecord p;
  p.paper_id = std::move(id);
  p.year = year;
  return p;
}

AuthorshipTriple Triple(std::string p, std::string a, std::optional<std::string> f) {
  return {std::move(p), std::move(a), std::move(f), 0};
}

TEST(JoinTest, FillsYear) {
  auto r = Join({Paper("P1", 2005)}, {Triple("P1", "A1", "F1")});
  ASSERT_EQ(r.out.size(), 1u);
  EXPECT_EQ(r.out[0], (AuthorshipTriple{"P1", "A1", "F1", 2005}));
}

TEST(JoinTest, UnknownPaperGoesToRejects) {
  auto r = Join({Paper("P1", 2005)}, {Triple("P9", "A1", "F1")});
  EXPECT_TRUE(r.out.empty());
  ASSERT_EQ(r.rejects.size(), 1u);
  EXPECT_EQ(r.rejects[0].second, "unknown paper");
  EXPECT_EQ(r.stats.rejected, 1);
}

TEST(JoinTest, ThreeTriplesOverTwoPapersKeepOrder) {
  auto r = Join({Paper("P1", 2005), Paper("P2", 2007)},
                {Triple("P2", "A1", "F1"), Triple("P1", "A1", std::nullopt), Triple("P2", "A2", "F2")});
  ASSERT_EQ(r.out.size(), 3u);
  EXPECT_EQ(r.out[0], (AuthorshipTriple{"P2", "A1", "F1", 2007}));
  EXPECT_EQ(r.out[1], (AuthorshipTriple{"P1", "A1", std::nullopt, 2005}));
  EXPECT_EQ(r.out[2], (AuthorshipTriple{"P2", "A2", "F2", 2007}));
}

TEST(JoinTest, PaperWithoutYearIsRejected) {
  auto r = Join({Paper("P1", std::nullopt)}, {Triple("P1", "A1", "F1")});
  EXPECT_TRUE(r.out.empty());
  ASSERT_EQ(r.rejects.size(), 1u);
  EXPECT_EQ(r.rejects[0].second, "paper has no year");
}

TEST(JoinTest, FirstDuplicatePaperWins) {
  auto r = Join({Paper("P1", 2001), Paper("P1", 2009)}, {Triple("P1", "A1", "F1")});
  EXPECT_EQ(r.out.at(0).year, 2001);
  EXPECT_EQ(r.stats.duplicate_papers, 1);
}

TEST(JoinTest, SpillWithoutDirectoryIsInputError) {
  JoinOptions options;
  options.memory_budget_bytes = 1;
  EXPECT_THROW(Join({Paper("P1", 2001), Paper("P2", 2002)}, {}, options), InputError);
}

// Property: the spilled join equals the in-memory join, and output + rejects
// equals input.
TEST(JoinTest, SpilledJoinMatchesInMemoryJoin) {
  std::mt19937 rng(11);
  std::vector<PaperRecord> papers;
  for (int i = 0; i < 2000; ++i) {
    std::optional<int> year;
    if (rng() % 10) year = 1950 + static_cast<int>(rng() % 70);
    papers.push_back(Paper("P" + std::to_string(rng() % 2500), year));
  }
  std::vector<AuthorshipTriple> triples;
  for (int i = 0; i < 5000; ++i) {
    std::optional<std::string> aff;
    if (rng() % 3) aff = "F\t" + std::to_string(rng() % 40);
    triples.push_back(Triple("P" + std::to_string(rng() % 3000), "A" + std::to_string(rng() % 800), aff));
  }
  JoinResult memory = Join(papers, triples);
  EXPECT_FALSE(memory.stats.spilled);

  testing::TempDir dir;
  JoinOptions options;
  options.memory_budget_bytes = 4096;
  options.spill_dir = dir.path();
  options.spill_partitions = 7;
  JoinResult spilled = Join(papers, triples, options);
  EXPECT_TRUE(spilled.stats.spilled);

  EXPECT_EQ(spilled.out, memory.out);
  ASSERT_EQ(spilled.rejects.size(), memory.rejects.size());
  for (size_t i = 0; i < memory.rejects.size(); ++i) {
    EXPECT_EQ(spilled.rejects[i].first, memory.rejects[i].first);
    EXPECT_EQ(spilled.rejects[i].second, memory.rejects[i].second);
  }
  EXPECT_EQ(spilled.stats.duplicate_papers, memory.stats.duplicate_papers);
  for (const JoinResult* r : {&memory, &spilled}) {
    EXPECT_EQ(r->stats.input, static_cast<int64_t>(triples.size()));
    EXPECT_EQ(r->stats.output + r->stats.rejected, r->stats.input);
    EXPECT_EQ(r->out.size() + r->rejects.size(), triples.size());
  }
  EXPECT_TRUE(std::filesystem::is_empty(dir.path()));
}

TEST(StableHashTest, IsFnv1a) {
  EXPECT_EQ(StableHash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(StableHash("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace kgenrich
