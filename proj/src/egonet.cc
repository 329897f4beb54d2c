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

#include "kgenrich/egonet.h"

#include <algorithm>
#include <tuple>

#include <nlohmann/json.hpp>

#include "kgenrich/common.h"
#include "parallel.h"

namespace kgenrich {

namespace {

constexpr int32_t kSelf = -1;

struct Link {
  int32_t ego;
  int32_t year;
  int32_t alter;  // kSelf marks the ego's own presence

  bool operator<(const Link& o) const {
    return std::tie(ego, year, alter) < std::tie(o.ego, o.year, o.alter);
  }
};

}  // namespace

std::vector<EgoNetwork> BuildEgoNetworks(std::span<const AuthorshipTriple> triples,
                                         const EgoNetOptions& options, EgoNetStats* stats) {
  EgoNetStats local;
  if (!stats) stats = &local;
  stats->triples += static_cast<int64_t>(triples.size());

  std::vector<std::string_view> authors;
  authors.reserve(triples.size());
  for (const AuthorshipTriple& t : triples) authors.push_back(t.author_id);
  std::sort(authors.begin(), authors.end());
  authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
  auto intern = [&](std::string_view id) {
    return static_cast<int32_t>(std::lower_bound(authors.begin(), authors.end(), id) - authors.begin());
  };

  struct Authorship {
    std::string_view paper;
    int32_t author;
    int32_t year;
  };
  std::vector<Authorship> rows;
  rows.reserve(triples.size());
  for (const AuthorshipTriple& t : triples) rows.push_back({t.paper_id, intern(t.author_id), t.year});
  std::sort(rows.begin(), rows.end(), [](const Authorship& a, const Authorship& b) {
    return std::tie(a.paper, a.author) < std::tie(b.paper, b.author);
  });
  size_t before = rows.size();
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const Authorship& a, const Authorship& b) {
                           return a.paper == b.paper && a.author == b.author;
                         }),
             rows.end());
  stats->duplicate_authorships += static_cast<int64_t>(before - rows.size());
  stats->authorships += static_cast<int64_t>(rows.size());

  std::vector<Link> links;
  for (size_t lo = 0; lo < rows.size();) {
    size_t hi = lo;
    while (hi < rows.size() && rows[hi].paper == rows[lo].paper) ++hi;
    ++stats->papers;
    const size_t k = hi - lo;
    const int32_t year = rows[lo].year;
    if (k > options.max_authors_per_paper) {
      ++stats->excluded_papers;
      lo = hi;
      continue;
    }
    for (size_t i = lo; i < hi; ++i) {
      links.push_back({rows[i].author, year, kSelf});
      for (size_t j = lo; j < hi; ++j) {
        if (i != j) links.push_back({rows[i].author, year, rows[j].author});
      }
    }
    lo = hi;
  }
  rows.clear();
  rows.shrink_to_fit();

  // Partition by contiguous ego ranges so each part sorts independently.
  const int parts = std::max(1, options.parallelism);
  std::vector<std::vector<Link>> buckets(static_cast<size_t>(parts));
  const size_t n_authors = std::max<size_t>(1, authors.size());
  for (const Link& l : links) {
    buckets[static_cast<size_t>(l.ego) * static_cast<size_t>(parts) / n_authors].push_back(l);
  }
  links.clear();
  links.shrink_to_fit();

  std::vector<std::vector<EgoNetwork>> partial(buckets.size());
  internal::ParallelChunks(buckets.size(), parts, [&](size_t, size_t begin, size_t end) {
    for (size_t b = begin; b < end; ++b) {
      std::vector<Link>& bucket = buckets[b];
      std::sort(bucket.begin(), bucket.end());
      std::vector<EgoNetwork>& out = partial[b];
      for (size_t i = 0; i < bucket.size();) {
        const Link& first = bucket[i];
        if (out.empty() || out.back().year != first.year ||
            out.back().ego != authors[static_cast<size_t>(first.ego)]) {
          out.push_back({std::string(authors[static_cast<size_t>(first.ego)]), first.year, {}});
        }
        size_t j = i;
        while (j < bucket.size() && bucket[j].ego == first.ego && bucket[j].year == first.year &&
               bucket[j].alter == first.alter) {
          ++j;
        }
        if (first.alter != kSelf) {
          out.back().alters.emplace(authors[static_cast<size_t>(first.alter)],
                                    static_cast<int64_t>(j - i));
        }
        i = j;
      }
      bucket.clear();
      bucket.shrink_to_fit();
    }
  });

  std::vector<EgoNetwork> out;
  for (auto& p : partial) {
    for (auto& net : p) out.push_back(std::move(net));
  }
  stats->networks += static_cast<int64_t>(out.size());
  return out;
}

std::string EgoNetworkToJson(const EgoNetwork& network) {
  nlohmann::ordered_json j;
  j["ego"] = network.ego;
  j["year"] = network.year;
  nlohmann::ordered_json alters = nlohmann::ordered_json::object();
  for (const auto& [alter, weight] : network.alters) alters[alter] = weight;
  j["alters"] = std::move(alters);
  return j.dump();
}

EgoNetwork EgoNetworkFromJson(std::string_view line) {
  EgoNetwork net;
  try {
    nlohmann::json j = nlohmann::json::parse(line);
    net.ego = j.at("ego").get<std::string>();
    net.year = j.at("year").get<int>();
    for (const auto& [alter, weight] : j.at("alters").items()) net.alters[alter] = weight.get<int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad AuthorEgoNetworks line: ") + e.what());
  }
  return net;
}

}  // namespace kgenrich
