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

#include <fstream>
#include <iostream>
#include <sstream>

#include "kgenrich/ingest.h"

namespace kgenrich {

namespace fs = std::filesystem;

const std::vector<SubsetSchema>& AllSchemas() {
  static const std::vector<SubsetSchema> kSchemas = {
      {"papers",
       {"paper_id", "doc_type", "year", "citation_count", "reference_count", "venue_id"},
       5,
       DelimitedFormat::RawDump()},
      {"authors",
       {"author_id", "display_name", "last_known_affiliation_id", "paper_count",
        "citation_count"},
       5,
       DelimitedFormat::RawDump()},
      {"affiliations",
       {"affiliation_id", "name", "latitude", "longitude", "wiki_url"},
       4,
       DelimitedFormat::RawDump()},
      {"paper_author_affiliations",
       {"paper_id", "author_id", "affiliation_id"},
       3,
       DelimitedFormat::RawDump()},
      {"fields_of_study", {"fos_id", "name", "level"}, 3, DelimitedFormat::RawDump()},
      {"fos_children", {"parent_id", "child_id"}, 2, DelimitedFormat::RawDump()},
      {"paper_fos", {"paper_id", "fos_id", "score"}, 2, DelimitedFormat::RawDump()},
      {"abstracts", {"paper_id", "abstract"}, 2, DelimitedFormat::RawDump()},
      {"infobox", {"affiliation_id", "wikitext"}, 2, DelimitedFormat::RawDump()},
      {"gazetteer",
       {"name", "alt_names", "latitude", "longitude", "country_alpha2", "admin1", "population"},
       7,
       DelimitedFormat::EnrichedCsv()},
      {"countries",
       {"alpha2", "alpha3", "common_name", "official_name"},
       4,
       DelimitedFormat::EnrichedCsv()},
      {"territories", {"alpha2", "parent_alpha2"}, 2, DelimitedFormat::EnrichedCsv()},
  };
  return kSchemas;
}

const SubsetSchema* FindSchema(std::string_view subset) {
  for (const auto& schema : AllSchemas()) {
    if (schema.name == subset) return &schema;
  }
  return nullptr;
}

namespace {

char ParseDelimiter(std::string_view value, int line) {
  std::string v = AsciiLower(TrimView(value));
  if (v == "tab" || v == "\\t") return '\t';
  if (v == "comma" || v == ",") return ',';
  if (v == "semicolon" || v == ";") return ';';
  if (v == "pipe" || v == "|") return '|';
  if (v.size() == 1) return v[0];
  throw InputError("manifest line " + std::to_string(line) + ": bad delimiter '" +
                   std::string(value) + "'");
}

bool ParseBool(std::string_view value, int line) {
  std::string v = AsciiLower(TrimView(value));
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw InputError("manifest line " + std::to_string(line) + ": bad boolean '" +
                   std::string(value) + "'");
}

}  // namespace

Manifest Manifest::Load(const fs::path& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw InputError("cannot open manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path.parent_path());
}

Manifest Manifest::Parse(std::string_view text, const fs::path& base_dir) {
  Manifest manifest;
  // Format options may precede or follow the path line.
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> options;
  int line_no = 0;
  for (std::string_view line : SplitView(text, '\n')) {
    ++line_no;
    line = TrimView(line);
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("manifest line " + std::to_string(line_no) + ": expected 'subset = path'");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    size_t dot = key.find('.');
    if (dot != std::string::npos) {
      std::string subset = key.substr(0, dot);
      if (!FindSchema(subset)) {
        throw InputError("manifest line " + std::to_string(line_no) + ": unknown subset '" +
                         subset + "'");
      }
      options[subset].emplace_back(key.substr(dot + 1), value + "\x1f" + std::to_string(line_no));
      continue;
    }
    const SubsetSchema* schema = FindSchema(key);
    if (!schema) {
      throw InputError("manifest line " + std::to_string(line_no) + ": unknown subset '" + key +
                       "'");
    }
    if (value.empty()) {
      throw InputError("manifest line " + std::to_string(line_no) + ": empty path for '" + key +
                       "'");
    }
    fs::path p(value);
    if (p.is_relative()) p = base_dir / p;
    manifest.subsets_[key] = SubsetSource{key, p, schema->format, schema};
  }
  for (auto& [subset, opts] : options) {
    auto it = manifest.subsets_.find(subset);
    if (it == manifest.subsets_.end()) {
      throw InputError("manifest sets options for subset '" + subset + "' without a path");
    }
    for (auto& [name, packed] : opts) {
      size_t sep = packed.find('\x1f');
      std::string value = packed.substr(0, sep);
      int line = std::stoi(packed.substr(sep + 1));
      if (name == "delimiter") {
        it->second.format.delimiter = ParseDelimiter(value, line);
      } else if (name == "header") {
        it->second.format.header = ParseBool(value, line);
      } else if (name == "quoted") {
        it->second.format.quoted = ParseBool(value, line);
      } else {
        throw InputError("manifest line " + std::to_string(line) + ": unknown option '" + name +
                         "'");
      }
    }
  }
  for (const auto& [subset, source] : manifest.subsets_) {
    std::error_code ec;
    if (!fs::is_regular_file(source.path, ec)) {
      throw InputError("subset '" + subset + "' file not found: " + source.path.string());
    }
  }
  return manifest;
}

bool Manifest::Has(std::string_view subset) const { return subsets_.find(subset) != subsets_.end(); }

const SubsetSource& Manifest::Get(std::string_view subset) const {
  auto it = subsets_.find(subset);
  if (it == subsets_.end()) {
    throw InputError("manifest has no '" + std::string(subset) + "' subset");
  }
  return it->second;
}

void Manifest::Set(std::string_view subset, const fs::path& path) {
  const SubsetSchema* schema = FindSchema(subset);
  if (!schema) throw InputError("unknown subset '" + std::string(subset) + "'");
  subsets_[std::string(subset)] = SubsetSource{std::string(subset), path, schema->format, schema};
}

RejectLog::RejectLog(fs::path dir, std::string subset)
    : dir_(std::move(dir)), subset_(std::move(subset)) {
  std::error_code ec;
  fs::remove(path(), ec);
}

fs::path RejectLog::path() const { return dir_ / (subset_ + ".rejects.tsv"); }

void RejectLog::Record(int64_t line, std::string_view reason, std::string_view raw) {
  ++count_;
  if (dir_.empty()) return;
  if (!out_.is_open()) out_ = OpenForWrite(path());
  out_ << line << '\t' << EscapeTsvField(reason) << '\t' << EscapeTsvField(raw) << '\n';
}

void RejectLog::Flush() {
  if (out_.is_open()) out_.flush();
}

}  // namespace kgenrich
