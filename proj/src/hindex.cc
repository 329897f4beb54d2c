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

#include <algorithm>
#include <functional>
#include <tuple>

#include "kgenrich/common.h"

namespace kgenrich {

namespace {

void CheckNonNegative(std::span<const int64_t> citations) {
  for (int64_t c : citations) {
    if (c < 0) throw InputError("negative citation count " + std::to_string(c));
  }
}

}  // namespace

int64_t HIndexSorted(std::span<const int64_t> citations) {
  CheckNonNegative(citations);
  std::vector<int64_t> sorted(citations.begin(), citations.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  int64_t h = 0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= static_cast<int64_t>(i + 1)) h = static_cast<int64_t>(i + 1);
  }
  return h;
}

int64_t HIndexDefinition(std::span<const int64_t> citations) {
  CheckNonNegative(citations);
  for (int64_t h = static_cast<int64_t>(citations.size()); h > 0; --h) {
    int64_t at_least = 0;
    for (int64_t c : citations) at_least += c >= h;
    if (at_least >= h) return h;
  }
  return 0;
}

int64_t HIndexCounting(std::span<const int64_t> citations) {
  CheckNonNegative(citations);
  const size_t n = citations.size();
  std::vector<int64_t> buckets(n + 1, 0);
  for (int64_t c : citations) ++buckets[std::min<size_t>(static_cast<size_t>(c), n)];
  int64_t suffix = 0;
  for (size_t k = n; k > 0; --k) {
    suffix += buckets[k];
    if (suffix >= static_cast<int64_t>(k)) return static_cast<int64_t>(k);
  }
  return 0;
}

int64_t HIndexChecked(std::span<const int64_t> citations) {
  int64_t a = HIndexSorted(citations);
  int64_t b = HIndexDefinition(citations);
  int64_t c = HIndexCounting(citations);
  if (a != b || b != c) {
    throw ConsistencyError("h-index methods disagree: sorted=" + std::to_string(a) +
                           " definition=" + std::to_string(b) + " counting=" + std::to_string(c));
  }
  return a;
}

std::vector<AuthorHIndex> ComputeAuthorHIndex(
    std::span<const AuthorshipTriple> authorships,
    const std::unordered_map<std::string, int64_t>& paper_citations,
    std::span<const std::string> all_authors, HIndexStats* stats) {
  HIndexStats local;
  if (!stats) stats = &local;
  stats->authorships += static_cast<int64_t>(authorships.size());

  std::vector<std::pair<std::string_view, std::string_view>> pairs;  // (author, paper)
  pairs.reserve(authorships.size());
  for (const AuthorshipTriple& t : authorships) pairs.emplace_back(t.author_id, t.paper_id);
  std::sort(pairs.begin(), pairs.end());
  size_t before = pairs.size();
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  stats->duplicate_authorships += static_cast<int64_t>(before - pairs.size());

  std::vector<AuthorHIndex> out;
  std::vector<int64_t> citations;
  for (size_t lo = 0; lo < pairs.size();) {
    size_t hi = lo;
    citations.clear();
    while (hi < pairs.size() && pairs[hi].first == pairs[lo].first) {
      auto it = paper_citations.find(std::string(pairs[hi].second));
      if (it == paper_citations.end()) {
        ++stats->unknown_papers;
      } else {
        citations.push_back(it->second);
      }
      ++hi;
    }
    out.push_back({std::string(pairs[lo].first), HIndexChecked(citations),
                   static_cast<int64_t>(citations.size())});
    lo = hi;
  }

  if (!all_authors.empty()) {
    std::vector<AuthorHIndex> extra;
    for (const std::string& id : all_authors) {
      auto it = std::lower_bound(out.begin(), out.end(), id,
                                 [](const AuthorHIndex& a, const std::string& b) { return a.author_id < b; });
      if (it == out.end() || it->author_id != id) extra.push_back({id, 0, 0});
    }
    std::sort(extra.begin(), extra.end(),
              [](const AuthorHIndex& a, const AuthorHIndex& b) { return a.author_id < b.author_id; });
    extra.erase(std::unique(extra.begin(), extra.end(),
                            [](const AuthorHIndex& a, const AuthorHIndex& b) {
                              return a.author_id == b.author_id;
                            }),
                extra.end());
    std::vector<AuthorHIndex> merged;
    merged.reserve(out.size() + extra.size());
    std::merge(out.begin(), out.end(), extra.begin(), extra.end(), std::back_inserter(merged),
               [](const AuthorHIndex& a, const AuthorHIndex& b) { return a.author_id < b.author_id; });
    out = std::move(merged);
  }
  stats->authors += static_cast<int64_t>(out.size());
  return out;
}

}  // namespace kgenrich
