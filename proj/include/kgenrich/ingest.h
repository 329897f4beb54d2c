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

// Dump manifests, subset schemas, and typed record streams.
//
// A manifest is a plain text file of `subset = path` lines. Relative paths
// are resolved against the manifest's directory. Per-subset format overrides
// use `subset.delimiter = tab|comma|<char>` and `subset.header = true|false`.
// Blank lines and lines starting with '#' are ignored.

#ifndef KGENRICH_INGEST_H_
#define KGENRICH_INGEST_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgenrich/common.h"
#include "kgenrich/csv.h"

namespace kgenrich {

struct SubsetSchema {
  std::string name;
  std::vector<std::string> columns;
  // Trailing columns beyond min_arity are optional.
  size_t min_arity = 0;
  DelimitedFormat format;
};

// Known subset names: papers, authors, affiliations,
// paper_author_affiliations, fields_of_study, fos_children, paper_fos,
// abstracts, infobox, gazetteer, countries, territories.
const SubsetSchema* FindSchema(std::string_view subset);
const std::vector<SubsetSchema>& AllSchemas();

struct SubsetSource {
  std::string subset;
  std::filesystem::path path;
  DelimitedFormat format;
  const SubsetSchema* schema = nullptr;
};

class Manifest {
 public:
  Manifest() = default;

  // Parses and validates: unknown subsets, unreadable files and bad option
  // values are InputErrors.
  static Manifest Load(const std::filesystem::path& path);
  static Manifest Parse(std::string_view text, const std::filesystem::path& base_dir);

  bool Has(std::string_view subset) const;
  // Throws InputError naming the missing subset.
  const SubsetSource& Get(std::string_view subset) const;
  void Set(std::string_view subset, const std::filesystem::path& path);

  const std::map<std::string, SubsetSource, std::less<>>& subsets() const { return subsets_; }

 private:
  std::map<std::string, SubsetSource, std::less<>> subsets_;
};

// ---- record types ---------------------------------------------------------

enum class DocType { kNone, kJournal, kPatent, kConference, kBook, kBookChapter };

std::optional<DocType> ParseDocType(std::string_view text);
std::string_view DocTypeName(DocType type);

struct PaperRecord {
  std::string paper_id;
  DocType doc_type = DocType::kNone;
  std::optional<int> year;
  int64_t citation_count = 0;
  int64_t reference_count = 0;
  std::optional<std::string> venue_id;

  static std::optional<PaperRecord> FromFields(const std::vector<std::string>& f,
                                               std::string* error);
};

struct AuthorRecord {
  std::string author_id;
  std::string display_name;
  std::optional<std::string> last_known_affiliation;
  int64_t paper_count = 0;
  int64_t citation_count = 0;

  static std::optional<AuthorRecord> FromFields(const std::vector<std::string>& f,
                                                std::string* error);
};

// One (paper, author, affiliation) authorship link. `year` is zero until the
// triple has been joined with its paper.
struct AuthorshipTriple {
  std::string paper_id;
  std::string author_id;
  std::optional<std::string> affiliation_id;
  int year = 0;

  static std::optional<AuthorshipTriple> FromFields(const std::vector<std::string>& f,
                                                    std::string* error);
  friend bool operator==(const AuthorshipTriple&, const AuthorshipTriple&) = default;
};

struct AffiliationRecord {
  std::string affiliation_id;
  std::string name;
  std::optional<double> latitude;
  std::optional<double> longitude;
  std::optional<std::string> wiki_url;

  bool has_coordinates() const { return latitude && longitude; }

  static std::optional<AffiliationRecord> FromFields(const std::vector<std::string>& f,
                                                     std::string* error);
};

struct FosRecord {
  std::string fos_id;
  std::string name;
  int level = 0;

  static std::optional<FosRecord> FromFields(const std::vector<std::string>& f,
                                             std::string* error);
};

struct FosChildLink {
  std::string parent_id;
  std::string child_id;

  static std::optional<FosChildLink> FromFields(const std::vector<std::string>& f,
                                                std::string* error);
};

struct PaperFosLink {
  std::string paper_id;
  std::string fos_id;
  // Carried through but not used for scoring.
  std::optional<double> link_score;

  static std::optional<PaperFosLink> FromFields(const std::vector<std::string>& f,
                                                std::string* error);
};

struct AbstractInput {
  std::string paper_id;
  std::string text;

  static std::optional<AbstractInput> FromFields(const std::vector<std::string>& f,
                                                 std::string* error);
};

// Infobox store row; the wikitext has its `\n` escapes decoded.
struct InfoboxDocument {
  std::string affiliation_id;
  std::string wikitext;

  static std::optional<InfoboxDocument> FromFields(const std::vector<std::string>& f,
                                                   std::string* error);
};

// ---- streams --------------------------------------------------------------

enum class MalformedPolicy {
  // Count, warn, and write malformed lines to the subset's rejects file.
  kReport,
  // Count only.
  kSkip,
};

struct StreamCounts {
  int64_t in = 0;
  int64_t out = 0;
  int64_t rejects = 0;
  int64_t malformed = 0;
  int64_t invalid_utf8 = 0;
};

// Writes `<subset>.rejects.tsv` (line, reason, escaped raw record) in a
// directory, creating the file on first use.
class RejectLog {
 public:
  RejectLog() = default;  // discards everything
  RejectLog(std::filesystem::path dir, std::string subset);

  void Record(int64_t line, std::string_view reason, std::string_view raw);
  void Flush();
  int64_t count() const { return count_; }
  std::filesystem::path path() const;

 private:
  std::filesystem::path dir_;
  std::string subset_;
  std::ofstream out_;
  int64_t count_ = 0;
};

// Reads typed records from one subset file in file order. Lines whose arity
// does not match the schema, or whose fields fail to parse, are malformed
// events: counted, optionally logged, and skipped.
template <typename Record>
class RecordStream {
 public:
  RecordStream(const SubsetSource& source, RejectLog* rejects,
               MalformedPolicy policy = MalformedPolicy::kReport)
      : reader_(source.path, source.format),
        schema_(source.schema),
        rejects_(rejects),
        policy_(policy) {}

  std::optional<Record> Next() {
    while (reader_.Next(&fields_)) {
      ++counts_.in;
      counts_.invalid_utf8 = reader_.invalid_utf8();
      std::string error;
      std::optional<Record> record;
      if (schema_ && (fields_.size() < schema_->min_arity ||
                      fields_.size() > schema_->columns.size())) {
        error = "arity " + std::to_string(fields_.size()) + ", expected " +
                (schema_->min_arity == schema_->columns.size()
                     ? std::to_string(schema_->min_arity)
                     : std::to_string(schema_->min_arity) + ".." +
                           std::to_string(schema_->columns.size()));
      } else {
        record = Record::FromFields(fields_, &error);
      }
      if (record) {
        ++counts_.out;
        return record;
      }
      ++counts_.malformed;
      ++counts_.rejects;
      if (policy_ == MalformedPolicy::kReport && rejects_) {
        rejects_->Record(reader_.line_number(), "malformed: " + error, reader_.raw_record());
      }
    }
    counts_.invalid_utf8 = reader_.invalid_utf8();
    return std::nullopt;
  }

  // Drains the stream into a vector.
  std::vector<Record> ReadAll() {
    std::vector<Record> out;
    while (auto r = Next()) out.push_back(std::move(*r));
    return out;
  }

  const StreamCounts& counts() const { return counts_; }

 private:
  DelimitedReader reader_;
  const SubsetSchema* schema_;
  RejectLog* rejects_;
  MalformedPolicy policy_;
  std::vector<std::string> fields_;
  StreamCounts counts_;
};

}  // namespace kgenrich

#endif  // KGENRICH_INGEST_H_
