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

#include "kgenrich/ingest.h"

namespace kgenrich {

namespace {

std::optional<std::string> OptionalField(const std::vector<std::string>& f, size_t i) {
  if (i >= f.size()) return std::nullopt;
  std::string_view v = TrimView(f[i]);
  if (v.empty()) return std::nullopt;
  return std::string(v);
}

bool RequireId(const std::vector<std::string>& f, size_t i, std::string_view what,
               std::string* out, std::string* error) {
  std::string_view v = TrimView(f[i]);
  if (v.empty()) {
    *error = "empty " + std::string(what);
    return false;
  }
  *out = std::string(v);
  return true;
}

bool RequireCount(const std::vector<std::string>& f, size_t i, std::string_view what,
                  int64_t* out, std::string* error) {
  if (TrimView(f[i]).empty()) {
    *out = 0;
    return true;
  }
  auto v = ParseInt(f[i]);
  if (!v || *v < 0) {
    *error = "bad " + std::string(what) + " '" + f[i] + "'";
    return false;
  }
  *out = *v;
  return true;
}

}  // namespace

std::optional<DocType> ParseDocType(std::string_view text) {
  std::string t = AsciiLower(TrimView(text));
  std::erase_if(t, [](char c) { return c == ' ' || c == '_'; });
  if (t.empty() || t == "none") return DocType::kNone;
  if (t == "journal") return DocType::kJournal;
  if (t == "patent") return DocType::kPatent;
  if (t == "conference") return DocType::kConference;
  if (t == "book") return DocType::kBook;
  if (t == "bookchapter") return DocType::kBookChapter;
  return std::nullopt;
}

std::string_view DocTypeName(DocType type) {
  switch (type) {
    case DocType::kJournal: return "journal";
    case DocType::kPatent: return "patent";
    case DocType::kConference: return "conference";
    case DocType::kBook: return "book";
    case DocType::kBookChapter: return "book_chapter";
    case DocType::kNone: break;
  }
  return "none";
}

std::optional<PaperRecord> PaperRecord::FromFields(const std::vector<std::string>& f,
                                                   std::string* error) {
  PaperRecord r;
  if (!RequireId(f, 0, "paper_id", &r.paper_id, error)) return std::nullopt;
  auto type = ParseDocType(f[1]);
  if (!type) {
    *error = "unknown doc_type '" + f[1] + "'";
    return std::nullopt;
  }
  r.doc_type = *type;
  if (!TrimView(f[2]).empty()) {
    auto year = ParseInt(f[2]);
    if (!year || *year < 1800 || *year > 2100) {
      *error = "bad year '" + f[2] + "'";
      return std::nullopt;
    }
    r.year = static_cast<int>(*year);
  }
  if (!RequireCount(f, 3, "citation_count", &r.citation_count, error)) return std::nullopt;
  if (!RequireCount(f, 4, "reference_count", &r.reference_count, error)) return std::nullopt;
  r.venue_id = OptionalField(f, 5);
  return r;
}

std::optional<AuthorRecord> AuthorRecord::FromFields(const std::vector<std::string>& f,
                                                     std::string* error) {
  AuthorRecord r;
  if (!RequireId(f, 0, "author_id", &r.author_id, error)) return std::nullopt;
  r.display_name = Trim(f[1]);
  r.last_known_affiliation = OptionalField(f, 2);
  if (!RequireCount(f, 3, "paper_count", &r.paper_count, error)) return std::nullopt;
  if (!RequireCount(f, 4, "citation_count", &r.citation_count, error)) return std::nullopt;
  return r;
}

std::optional<AuthorshipTriple> AuthorshipTriple::FromFields(const std::vector<std::string>& f,
                                                             std::string* error) {
  AuthorshipTriple t;
  if (!RequireId(f, 0, "paper_id", &t.paper_id, error)) return std::nullopt;
  if (!RequireId(f, 1, "author_id", &t.author_id, error)) return std::nullopt;
  t.affiliation_id = OptionalField(f, 2);
  return t;
}

std::optional<AffiliationRecord> AffiliationRecord::FromFields(
    const std::vector<std::string>& f, std::string* error) {
  AffiliationRecord r;
  if (!RequireId(f, 0, "affiliation_id", &r.affiliation_id, error)) return std::nullopt;
  r.name = Trim(f[1]);
  bool has_lat = !TrimView(f[2]).empty();
  bool has_lon = !TrimView(f[3]).empty();
  if (has_lat != has_lon) {
    *error = "only one of latitude/longitude present";
    return std::nullopt;
  }
  if (has_lat) {
    r.latitude = ParseDouble(f[2]);
    r.longitude = ParseDouble(f[3]);
    if (!r.latitude || !r.longitude || *r.latitude < -90 || *r.latitude > 90 ||
        *r.longitude < -180 || *r.longitude > 180) {
      *error = "coordinates out of range";
      return std::nullopt;
    }
  }
  r.wiki_url = OptionalField(f, 4);
  return r;
}

std::optional<FosRecord> FosRecord::FromFields(const std::vector<std::string>& f,
                                               std::string* error) {
  FosRecord r;
  if (!RequireId(f, 0, "fos_id", &r.fos_id, error)) return std::nullopt;
  r.name = Trim(f[1]);
  auto level = ParseInt(f[2]);
  if (!level) {
    *error = "bad level '" + f[2] + "'";
    return std::nullopt;
  }
  // Range is validated when the DAG is built so that it is fatal there.
  r.level = static_cast<int>(*level);
  return r;
}

std::optional<FosChildLink> FosChildLink::FromFields(const std::vector<std::string>& f,
                                                     std::string* error) {
  FosChildLink r;
  if (!RequireId(f, 0, "parent_id", &r.parent_id, error)) return std::nullopt;
  if (!RequireId(f, 1, "child_id", &r.child_id, error)) return std::nullopt;
  return r;
}

std::optional<PaperFosLink> PaperFosLink::FromFields(const std::vector<std::string>& f,
                                                     std::string* error) {
  PaperFosLink r;
  if (!RequireId(f, 0, "paper_id", &r.paper_id, error)) return std::nullopt;
  if (!RequireId(f, 1, "fos_id", &r.fos_id, error)) return std::nullopt;
  if (f.size() > 2 && !TrimView(f[2]).empty()) {
    r.link_score = ParseDouble(f[2]);
    if (!r.link_score) {
      *error = "bad score '" + f[2] + "'";
      return std::nullopt;
    }
  }
  return r;
}

std::optional<AbstractInput> AbstractInput::FromFields(const std::vector<std::string>& f,
                                                       std::string* error) {
  AbstractInput r;
  if (!RequireId(f, 0, "paper_id", &r.paper_id, error)) return std::nullopt;
  r.text = UnescapeTsvField(f[1]);
  return r;
}

std::optional<InfoboxDocument> InfoboxDocument::FromFields(const std::vector<std::string>& f,
                                                           std::string* error) {
  InfoboxDocument r;
  if (!RequireId(f, 0, "affiliation_id", &r.affiliation_id, error)) return std::nullopt;
  r.wikitext = UnescapeTsvField(f[1]);
  return r;
}

}  // namespace kgenrich
