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

#ifndef KGENRICH_COUNTRY_H_
#define KGENRICH_COUNTRY_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgenrich/common.h"

namespace kgenrich {

class DelimitedReader;

struct CountryRecord {
  CountryCode alpha2;
  std::string alpha3;
  std::string common_name;
  std::string official_name;

  friend bool operator==(const CountryRecord&, const CountryRecord&) = default;
};

struct CountryMatchOptions {
  double min_similarity = 0.85;
};

struct CountryMatch {
  const CountryRecord* record = nullptr;
  bool fuzzy = false;
  double similarity = 1.0;
};

// ISO 3166-1 table. Immutable after construction.
class CountryTable {
 public:
  CountryTable() = default;
  // Throws InputError on duplicate codes or empty fields.
  explicit CountryTable(std::vector<CountryRecord> records);

  // The table compiled into the library.
  static const CountryTable& Bundled();
  // CSV with header: alpha2, alpha3, common_name, official_name.
  static CountryTable Load(const std::filesystem::path& path);
  static CountryTable Read(DelimitedReader& reader);

  const CountryRecord* Find(CountryCode alpha2) const;
  const CountryRecord* FindAlpha3(std::string_view alpha3) const;
  const std::vector<CountryRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }

  // See NormalizeCountry().
  std::optional<CountryMatch> Match(std::string_view raw, const CountryMatchOptions& options) const;

 private:
  std::vector<CountryRecord> records_;
  std::unordered_map<CountryCode, size_t> by_alpha2_;
  std::unordered_map<std::string, size_t> by_alpha3_;
  // Casefolded names and codes for the exact path.
  std::unordered_map<std::string, size_t> exact_;
  // Normalized (casefolded, punctuation stripped) names for the fuzzy path.
  std::vector<std::pair<std::u32string, size_t>> fuzzy_names_;
  std::unordered_map<std::string, size_t> normalized_exact_;
};

// Resolves free text to a table row. Exact (case-insensitive) match on the
// common name, official name, alpha-2 or alpha-3 code wins; otherwise the
// input is casefolded and stripped of punctuation; an equal normalized name
// or code scores 1.0, else the best edit-distance similarity against the
// normalized names is accepted at or above the threshold. Ties keep the
// earlier table row. Throws InputError on empty
// input; returns nullopt when nothing matches.
std::optional<CountryMatch> NormalizeCountry(std::string_view raw, const CountryTable& table,
                                             const CountryMatchOptions& options = {});

// Casefold, drop '.' and apostrophes, map other punctuation to spaces, and
// collapse whitespace.
std::string NormalizeCountryKey(std::string_view text);

// 1 - levenshtein(a, b) / max(|a|, |b|) over code points; 1.0 for two empty
// strings.
double NameSimilarity(std::u32string_view a, std::u32string_view b);
std::u32string ToCodePoints(std::string_view utf8);

// Territory -> parent country map used for dual coding (for example PR is
// also reported as US).
class TerritoryTable {
 public:
  TerritoryTable() = default;
  // Throws InputError if a code maps to itself or a parent is itself a
  // territory, so lookups are never chained.
  explicit TerritoryTable(std::unordered_map<CountryCode, CountryCode> parents);

  static const TerritoryTable& Bundled();
  // CSV with header: alpha2, parent_alpha2.
  static TerritoryTable Load(const std::filesystem::path& path);
  static TerritoryTable Read(DelimitedReader& reader);

  std::optional<CountryCode> Parent(CountryCode code) const;
  size_t size() const { return parents_.size(); }

 private:
  std::unordered_map<CountryCode, CountryCode> parents_;
};

std::optional<CountryCode> SecondaryCountry(CountryCode alpha2,
                                            const TerritoryTable& territories =
                                                TerritoryTable::Bundled());

}  // namespace kgenrich

#endif  // KGENRICH_COUNTRY_H_
