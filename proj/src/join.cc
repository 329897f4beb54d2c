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

#include <unistd.h>

#include <fstream>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

namespace kgenrich {

namespace fs = std::filesystem;

uint64_t StableHash(std::string_view s) {
  uint64_t h = 14695981039346656037ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

// Year 0 marks a paper present in the dump without a usable year.
using YearIndex = std::unordered_map<std::string, int>;

constexpr int kUnknownPaper = -1;
constexpr std::string_view kNoYearReason = "paper has no year";
constexpr std::string_view kUnknownPaperReason = "unknown paper";

size_t EntryCost(const std::string& id) { return id.size() + 64; }

class SpillDir {
 public:
  explicit SpillDir(const fs::path& parent) {
    if (parent.empty()) throw InputError("join spill required but no spill directory configured");
    path_ = parent / ("join-spill-" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~SpillDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  SpillDir(const SpillDir&) = delete;
  SpillDir& operator=(const SpillDir&) = delete;

  fs::path File(std::string_view kind, size_t part) const {
    return path_ / (std::string(kind) + "." + std::to_string(part) + ".tsv");
  }

 private:
  fs::path path_;
};

std::string EncodeAffiliation(const std::optional<std::string>& aff) {
  return aff ? "+" + EscapeTsvField(*aff) : "-";
}

std::optional<std::string> DecodeAffiliation(std::string_view s) {
  if (s.empty() || s.front() != '+') return std::nullopt;
  return UnescapeTsvField(s.substr(1));
}

struct JoinedRow {
  uint64_t seq = 0;
  int year = 0;
  AuthorshipTriple triple;
};

bool ReadJoinedRow(std::ifstream& in, JoinedRow* row) {
  std::string line;
  if (!std::getline(in, line)) return false;
  auto f = SplitView(line, '\t');
  if (f.size() != 5) throw ConsistencyError("corrupt join spill record");
  row->seq = static_cast<uint64_t>(*ParseInt(f[0]));
  row->year = static_cast<int>(*ParseInt(f[1]));
  row->triple.paper_id = UnescapeTsvField(f[2]);
  row->triple.author_id = UnescapeTsvField(f[3]);
  row->triple.affiliation_id = DecodeAffiliation(f[4]);
  row->triple.year = row->year > 0 ? row->year : 0;
  return true;
}

void Deliver(AuthorshipTriple&& t, int year, JoinStats* stats, const TripleSink& emit,
             const TripleRejectSink& reject) {
  if (year > 0) {
    t.year = year;
    ++stats->output;
    emit(std::move(t));
  } else {
    ++stats->rejected;
    reject(t, year == 0 ? kNoYearReason : kUnknownPaperReason);
  }
}

void SpilledJoin(YearIndex* index, const PaperSource& papers, const TripleSource& triples,
                 const JoinOptions& options, JoinStats* stats, const TripleSink& emit,
                 const TripleRejectSink& reject) {
  const size_t parts = std::max<size_t>(1, options.spill_partitions);
  SpillDir dir(options.spill_dir);

  {
    std::vector<std::ofstream> paper_parts;
    for (size_t p = 0; p < parts; ++p) paper_parts.push_back(OpenForWrite(dir.File("papers", p)));
    auto write_paper = [&](const std::string& id, int year) {
      auto& out = paper_parts[StableHash(id) % parts];
      out << EscapeTsvField(id) << '\t' << year << '\n';
    };
    // Entries already indexed are first occurrences; later duplicates are
    // appended after them, so first-wins survives the spill.
    for (const auto& [id, year] : *index) write_paper(id, year);
    YearIndex().swap(*index);
    while (auto paper = papers()) {
      ++stats->papers;
      write_paper(paper->paper_id, paper->year.value_or(0));
    }
  }

  {
    std::vector<std::ofstream> triple_parts;
    for (size_t p = 0; p < parts; ++p) {
      triple_parts.push_back(OpenForWrite(dir.File("triples", p)));
    }
    uint64_t seq = 0;
    while (auto t = triples()) {
      ++stats->input;
      auto& out = triple_parts[StableHash(t->paper_id) % parts];
      out << seq++ << '\t' << EscapeTsvField(t->paper_id) << '\t' << EscapeTsvField(t->author_id)
          << '\t' << EncodeAffiliation(t->affiliation_id) << '\n';
    }
  }

  for (size_t p = 0; p < parts; ++p) {
    YearIndex part_index;
    {
      std::ifstream in(dir.File("papers", p));
      std::string line;
      while (std::getline(in, line)) {
        size_t tab = line.rfind('\t');
        std::string id = UnescapeTsvField(std::string_view(line).substr(0, tab));
        int year = static_cast<int>(*ParseInt(std::string_view(line).substr(tab + 1)));
        if (!part_index.emplace(std::move(id), year).second) ++stats->duplicate_papers;
      }
    }
    std::ifstream in(dir.File("triples", p));
    std::ofstream out = OpenForWrite(dir.File("joined", p));
    std::string line;
    while (std::getline(in, line)) {
      auto f = SplitView(line, '\t');
      auto it = part_index.find(UnescapeTsvField(f[1]));
      int year = it == part_index.end() ? kUnknownPaper : it->second;
      out << f[0] << '\t' << year << '\t' << f[1] << '\t' << f[2] << '\t' << f[3] << '\n';
    }
  }

  // K-way merge on the input sequence number restores input order.
  std::vector<std::ifstream> joined;
  for (size_t p = 0; p < parts; ++p) joined.emplace_back(dir.File("joined", p));
  std::vector<JoinedRow> heads(parts);
  using Item = std::pair<uint64_t, size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (size_t p = 0; p < parts; ++p) {
    if (ReadJoinedRow(joined[p], &heads[p])) heap.emplace(heads[p].seq, p);
  }
  while (!heap.empty()) {
    size_t p = heap.top().second;
    heap.pop();
    JoinedRow& row = heads[p];
    Deliver(std::move(row.triple), row.year, stats, emit, reject);
    if (ReadJoinedRow(joined[p], &row)) heap.emplace(row.seq, p);
  }
}

}  // namespace

JoinStats JoinTriplesWithYears(const PaperSource& papers, const TripleSource& triples,
                               const JoinOptions& options, const TripleSink& emit,
                               const TripleRejectSink& reject) {
  JoinStats stats;
  YearIndex index;
  size_t bytes = 0;
  while (auto paper = papers()) {
    ++stats.papers;
    size_t cost = EntryCost(paper->paper_id);
    if (!index.emplace(std::move(paper->paper_id), paper->year.value_or(0)).second) {
      ++stats.duplicate_papers;
      continue;
    }
    bytes += cost;
    if (bytes > options.memory_budget_bytes) {
      stats.spilled = true;
      SpilledJoin(&index, papers, triples, options, &stats, emit, reject);
      return stats;
    }
  }
  while (auto t = triples()) {
    ++stats.input;
    auto it = index.find(t->paper_id);
    int year = it == index.end() ? kUnknownPaper : it->second;
    Deliver(std::move(*t), year, &stats, emit, reject);
  }
  return stats;
}

}  // namespace kgenrich
