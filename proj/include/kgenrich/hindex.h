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

// h-index: the largest h such that h papers have at least h citations each.

#ifndef KGENRICH_HINDEX_H_
#define KGENRICH_HINDEX_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgenrich/ingest.h"

namespace kgenrich {

// Sorts descending and scans for the last position i with c[i-1] >= i.
int64_t HIndexSorted(std::span<const int64_t> citations);

// Tries every candidate h from |citations| down to 0.
int64_t HIndexDefinition(std::span<const int64_t> citations);

// Counting buckets clamped at |citations|; linear time.
int64_t HIndexCounting(std::span<const int64_t> citations);

// Runs all three and throws ConsistencyError unless they agree.
int64_t HIndexChecked(std::span<const int64_t> citations);

struct AuthorHIndex {
  std::string author_id;
  int64_t h_index = 0;
  int64_t papers = 0;

  friend bool operator==(const AuthorHIndex&, const AuthorHIndex&) = default;
};

struct HIndexStats {
  int64_t authorships = 0;
  int64_t duplicate_authorships = 0;
  int64_t unknown_papers = 0;
  int64_t authors = 0;
};

// Per-author h-index from (paper, author) rows and per-paper citation counts.
// `all_authors`, when non-empty, adds authors without papers at h = 0.
// Sorted by author_id.
std::vector<AuthorHIndex> ComputeAuthorHIndex(
    std::span<const AuthorshipTriple> authorships,
    const std::unordered_map<std::string, int64_t>& paper_citations,
    std::span<const std::string> all_authors = {}, HIndexStats* stats = nullptr);

}  // namespace kgenrich

#endif  // KGENRICH_HINDEX_H_
