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

#ifndef KGENRICH_JOIN_H_
#define KGENRICH_JOIN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string_view>

#include "kgenrich/ingest.h"

namespace kgenrich {

using PaperSource = std::function<std::optional<PaperRecord>()>;
using TripleSource = std::function<std::optional<AuthorshipTriple>()>;
using TripleSink = std::function<void(AuthorshipTriple&&)>;
using TripleRejectSink = std::function<void(const AuthorshipTriple&, std::string_view reason)>;

struct JoinOptions {
  // Estimated bytes the paper-id index may use before it is spilled to disk.
  size_t memory_budget_bytes = size_t{1} << 30;
  // Where spill partitions go. Required only when a spill happens.
  std::filesystem::path spill_dir;
  size_t spill_partitions = 64;
};

struct JoinStats {
  int64_t papers = 0;
  int64_t duplicate_papers = 0;
  int64_t input = 0;
  int64_t output = 0;
  int64_t rejected = 0;
  bool spilled = false;
};

// Attaches the publication year of each triple's paper. Triples whose paper
// is unknown or has no year go to `reject`. Output order equals input order
// in both the in-memory and the spilled path, and output + rejects = input.
// When a paper id is repeated the first record wins.
JoinStats JoinTriplesWithYears(const PaperSource& papers, const TripleSource& triples,
                               const JoinOptions& options, const TripleSink& emit,
                               const TripleRejectSink& reject);

// Stable across platforms, used for partitioning.
uint64_t StableHash(std::string_view s);

}  // namespace kgenrich

#endif  // KGENRICH_JOIN_H_
