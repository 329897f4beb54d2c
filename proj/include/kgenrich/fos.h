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

// Field-of-study hierarchy: research-area label propagation and paper
// scoring.

#ifndef KGENRICH_FOS_H_
#define KGENRICH_FOS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgenrich/ingest.h"

namespace kgenrich {

inline constexpr int kMaxFosLevel = 5;

// Area id -> proportion. Non-empty maps sum to 1.
using AreaScores = std::map<std::string, double>;

struct FosNode {
  std::string fos_id;
  std::string name;
  int level = 0;
  std::vector<std::string> parents;  // sorted, distinct
};

struct FosDagStats {
  int64_t nodes = 0;
  int64_t links = 0;
  int64_t duplicate_links = 0;
};

// Validated hierarchy. Construction throws InputError on duplicate ids,
// levels outside [0, 5], parents of level-0 nodes, unknown ids in links,
// and parents whose level is not strictly below the child's. The level rule
// rules out cycles.
class FosDag {
 public:
  FosDag(std::vector<FosRecord> nodes, std::span<const FosChildLink> links,
         FosDagStats* stats = nullptr);

  const std::vector<FosNode>& nodes() const { return nodes_; }
  const FosNode* Find(std::string_view fos_id) const;
  size_t size() const { return nodes_.size(); }

 private:
  std::vector<FosNode> nodes_;  // sorted by (level, fos_id)
  std::unordered_map<std::string, size_t> index_;
};

struct FosLabeling {
  std::string fos_id;
  AreaScores scores;

  friend bool operator==(const FosLabeling&, const FosLabeling&) = default;
};

struct PropagationStats {
  int64_t labeled = 0;
  int64_t unlabeled = 0;
};

// Level-0 nodes get {self: 1.0}; every other node sums its parents' score
// vectors and normalizes. Levels are processed in ascending order, nodes of
// one level in parallel. Output is sorted by fos_id.
std::vector<FosLabeling> PropagateLabels(const FosDag& dag, int parallelism = 1,
                                         PropagationStats* stats = nullptr);

struct PaperAreaScores {
  std::string paper_id;
  AreaScores scores;

  friend bool operator==(const PaperAreaScores&, const PaperAreaScores&) = default;
};

struct PaperScoreStats {
  int64_t links = 0;
  int64_t duplicate_links = 0;
  int64_t unknown_fos = 0;
  int64_t papers = 0;
  int64_t unlabeled_papers = 0;
};

using FosRejectSink = std::function<void(const PaperFosLink& link, std::string_view reason)>;

// Sums labeled scores over each paper's distinct linked fields, then divides
// by the total. Link scores are ignored. `papers`, when non-empty, adds
// papers without links (empty scores). Sorted by paper_id.
std::vector<PaperAreaScores> ScorePapers(std::span<const PaperFosLink> links,
                                         std::span<const FosLabeling> labelings,
                                         std::span<const std::string> papers = {},
                                         const FosRejectSink& reject = nullptr,
                                         PaperScoreStats* stats = nullptr);

// Divides by the sum; empty or all-zero input yields an empty map.
AreaScores NormalizeScores(const std::map<std::string, double>& raw);

}  // namespace kgenrich

#endif  // KGENRICH_FOS_H_
