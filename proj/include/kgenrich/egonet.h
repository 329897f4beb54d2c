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

// Annual co-authorship ego networks.

#ifndef KGENRICH_EGONET_H_
#define KGENRICH_EGONET_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kgenrich/ingest.h"

namespace kgenrich {

struct EgoNetwork {
  std::string ego;
  int year = 0;
  std::map<std::string, int64_t> alters;  // alter -> shared papers that year

  friend bool operator==(const EgoNetwork&, const EgoNetwork&) = default;
};

struct EgoNetOptions {
  // Papers with more distinct authors than this are excluded.
  size_t max_authors_per_paper = 500;
  int parallelism = 1;
};

struct EgoNetStats {
  int64_t triples = 0;
  int64_t authorships = 0;
  int64_t duplicate_authorships = 0;
  int64_t papers = 0;
  int64_t excluded_papers = 0;
  int64_t networks = 0;
};

// One network per (author, year) with at least one authorship, sorted by ego
// then year. Single-author papers yield egos with empty alters.
std::vector<EgoNetwork> BuildEgoNetworks(std::span<const AuthorshipTriple> triples,
                                         const EgoNetOptions& options = {},
                                         EgoNetStats* stats = nullptr);

// {"ego": ..., "year": ..., "alters": {id: weight}}
std::string EgoNetworkToJson(const EgoNetwork& network);
EgoNetwork EgoNetworkFromJson(std::string_view line);

}  // namespace kgenrich

#endif  // KGENRICH_EGONET_H_
