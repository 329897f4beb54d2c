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

#include "kgenrich/fos.h"

#include <algorithm>
#include <tuple>

#include "kgenrich/common.h"
#include "parallel.h"

namespace kgenrich {

FosDag::FosDag(std::vector<FosRecord> records, std::span<const FosChildLink> links,
               FosDagStats* stats) {
  FosDagStats local;
  if (!stats) stats = &local;
  std::sort(records.begin(), records.end(), [](const FosRecord& a, const FosRecord& b) {
    return std::tie(a.level, a.fos_id) < std::tie(b.level, b.fos_id);
  });
  nodes_.reserve(records.size());
  for (FosRecord& r : records) {
    if (r.level < 0 || r.level > kMaxFosLevel) {
      throw InputError("field of study " + r.fos_id + " has level " + std::to_string(r.level) +
                       " outside [0, " + std::to_string(kMaxFosLevel) + "]");
    }
    if (!index_.emplace(r.fos_id, nodes_.size()).second) {
      throw InputError("duplicate field of study id " + r.fos_id);
    }
    nodes_.push_back({std::move(r.fos_id), std::move(r.name), r.level, {}});
  }
  stats->nodes += static_cast<int64_t>(nodes_.size());

  for (const FosChildLink& link : links) {
    auto parent = index_.find(link.parent_id);
    auto child = index_.find(link.child_id);
    if (parent == index_.end()) throw InputError("fos link names unknown parent " + link.parent_id);
    if (child == index_.end()) throw InputError("fos link names unknown child " + link.child_id);
    const FosNode& p = nodes_[parent->second];
    FosNode& c = nodes_[child->second];
    if (c.level == 0) throw InputError("level-0 field of study " + c.fos_id + " has a parent");
    if (p.level >= c.level) {
      throw InputError("fos link " + p.fos_id + " (level " + std::to_string(p.level) + ") -> " +
                       c.fos_id + " (level " + std::to_string(c.level) +
                       "): parent level must be below child level");
    }
    c.parents.push_back(p.fos_id);
    ++stats->links;
  }
  for (FosNode& n : nodes_) {
    std::sort(n.parents.begin(), n.parents.end());
    size_t before = n.parents.size();
    n.parents.erase(std::unique(n.parents.begin(), n.parents.end()), n.parents.end());
    stats->duplicate_links += static_cast<int64_t>(before - n.parents.size());
  }
}

const FosNode* FosDag::Find(std::string_view fos_id) const {
  auto it = index_.find(std::string(fos_id));
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

AreaScores NormalizeScores(const std::map<std::string, double>& raw) {
  double total = 0;
  for (const auto& [area, score] : raw) total += score;
  AreaScores out;
  if (!(total > 0)) return out;
  for (const auto& [area, score] : raw) {
    if (score > 0) out.emplace(area, score / total);
  }
  return out;
}

std::vector<FosLabeling> PropagateLabels(const FosDag& dag, int parallelism,
                                         PropagationStats* stats) {
  const auto& nodes = dag.nodes();
  std::unordered_map<std::string_view, size_t> position;
  for (size_t i = 0; i < nodes.size(); ++i) position.emplace(nodes[i].fos_id, i);

  std::vector<AreaScores> scores(nodes.size());
  // Nodes are sorted by level, so each level is a contiguous range.
  for (size_t lo = 0; lo < nodes.size();) {
    size_t hi = lo;
    while (hi < nodes.size() && nodes[hi].level == nodes[lo].level) ++hi;
    internal::ParallelChunks(hi - lo, parallelism, [&](size_t, size_t begin, size_t end) {
      for (size_t i = lo + begin; i < lo + end; ++i) {
        const FosNode& node = nodes[i];
        if (node.level == 0) {
          scores[i] = {{node.fos_id, 1.0}};
          continue;
        }
        std::map<std::string, double> raw;
        for (const std::string& parent : node.parents) {
          for (const auto& [area, s] : scores[position.at(parent)]) raw[area] += s;
        }
        scores[i] = NormalizeScores(raw);
      }
    });
    lo = hi;
  }

  std::vector<FosLabeling> out;
  out.reserve(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (stats) ++(scores[i].empty() ? stats->unlabeled : stats->labeled);
    out.push_back({nodes[i].fos_id, std::move(scores[i])});
  }
  std::sort(out.begin(), out.end(),
            [](const FosLabeling& a, const FosLabeling& b) { return a.fos_id < b.fos_id; });
  return out;
}

std::vector<PaperAreaScores> ScorePapers(std::span<const PaperFosLink> links,
                                         std::span<const FosLabeling> labelings,
                                         std::span<const std::string> papers,
                                         const FosRejectSink& reject, PaperScoreStats* stats) {
  PaperScoreStats local;
  if (!stats) stats = &local;
  stats->links += static_cast<int64_t>(links.size());
  std::unordered_map<std::string_view, const AreaScores*> labels;
  for (const FosLabeling& l : labelings) labels.emplace(l.fos_id, &l.scores);

  std::vector<const PaperFosLink*> known;
  known.reserve(links.size());
  for (const PaperFosLink& link : links) {
    if (!labels.count(link.fos_id)) {
      ++stats->unknown_fos;
      if (reject) reject(link, "unknown field of study");
      continue;
    }
    known.push_back(&link);
  }
  std::sort(known.begin(), known.end(), [](const PaperFosLink* a, const PaperFosLink* b) {
    return std::tie(a->paper_id, a->fos_id) < std::tie(b->paper_id, b->fos_id);
  });
  size_t before = known.size();
  known.erase(std::unique(known.begin(), known.end(),
                          [](const PaperFosLink* a, const PaperFosLink* b) {
                            return a->paper_id == b->paper_id && a->fos_id == b->fos_id;
                          }),
              known.end());
  stats->duplicate_links += static_cast<int64_t>(before - known.size());

  std::vector<PaperAreaScores> out;
  for (size_t lo = 0; lo < known.size();) {
    size_t hi = lo;
    std::map<std::string, double> raw;
    while (hi < known.size() && known[hi]->paper_id == known[lo]->paper_id) {
      for (const auto& [area, s] : *labels.at(known[hi]->fos_id)) raw[area] += s;
      ++hi;
    }
    out.push_back({known[lo]->paper_id, NormalizeScores(raw)});
    lo = hi;
  }

  if (!papers.empty()) {
    std::vector<std::string> missing;
    for (const std::string& id : papers) {
      auto it = std::lower_bound(out.begin(), out.end(), id, [](const PaperAreaScores& a, const std::string& b) {
        return a.paper_id < b;
      });
      if (it == out.end() || it->paper_id != id) missing.push_back(id);
    }
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    for (std::string& id : missing) out.push_back({std::move(id), {}});
    std::sort(out.begin(), out.end(), [](const PaperAreaScores& a, const PaperAreaScores& b) {
      return a.paper_id < b.paper_id;
    });
  }
  stats->papers += static_cast<int64_t>(out.size());
  for (const PaperAreaScores& p : out) stats->unlabeled_papers += p.scores.empty();
  return out;
}

}  // namespace kgenrich
