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

#include "kgenrich/country.h"

#include <algorithm>

#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "kgenrich/csv.h"
#include "kgenrich/embedded_data.h"

namespace kgenrich {

CountryTable::CountryTable(std::vector<CountryRecord> records) : records_(std::move(records)) {
  for (size_t i = 0; i < records_.size(); ++i) {
    const CountryRecord& r = records_[i];
    if (r.alpha2.empty() || r.alpha3.size() != 3 || r.common_name.empty() ||
        r.official_name.empty()) {
      throw InputError("country table row " + std::to_string(i + 1) + " has empty fields");
    }
    if (!by_alpha2_.emplace(r.alpha2, i).second) {
      throw InputError("duplicate alpha2 '" + r.alpha2.str() + "' in country table");
    }
    if (!by_alpha3_.emplace(AsciiLower(r.alpha3), i).second) {
      throw InputError("duplicate alpha3 '" + r.alpha3 + "' in country table");
    }
  }
  // Earlier rows win on collisions, keeping the tie rule stable.
  for (size_t i = 0; i < records_.size(); ++i) {
    const CountryRecord& r = records_[i];
    for (std::string_view name : {r.common_name, r.official_name}) {
      exact_.emplace(CaseFold(name), i);
      normalized_exact_.emplace(NormalizeCountryKey(name), i);
    }
    exact_.emplace(AsciiLower(r.alpha2.view()), i);
    exact_.emplace(AsciiLower(r.alpha3), i);
    normalized_exact_.emplace(AsciiLower(r.alpha2.view()), i);
    normalized_exact_.emplace(AsciiLower(r.alpha3), i);
    fuzzy_names_.emplace_back(ToCodePoints(NormalizeCountryKey(r.common_name)), i);
    if (r.official_name != r.common_name) {
      fuzzy_names_.emplace_back(ToCodePoints(NormalizeCountryKey(r.official_name)), i);
    }
  }
}

CountryTable CountryTable::Read(DelimitedReader& reader) {
  std::vector<CountryRecord> records;
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    if (f.size() != 4) {
      throw InputError("country table line " + std::to_string(reader.line_number()) +
                       ": expected 4 columns");
    }
    auto code = CountryCode::Parse(f[0]);
    if (!code) {
      throw InputError("country table line " + std::to_string(reader.line_number()) +
                       ": bad alpha2 '" + f[0] + "'");
    }
    records.push_back({*code, std::string(TrimView(f[1])), Trim(f[2]), Trim(f[3])});
  }
  return CountryTable(std::move(records));
}

CountryTable CountryTable::Load(const std::filesystem::path& path) {
  DelimitedReader reader(path, DelimitedFormat::EnrichedCsv());
  return Read(reader);
}

const CountryTable& CountryTable::Bundled() {
  static const CountryTable kTable = [] {
    DelimitedReader reader(std::string(embedded::CountryTableCsv()),
                           DelimitedFormat::EnrichedCsv());
    return Read(reader);
  }();
  return kTable;
}

const CountryRecord* CountryTable::Find(CountryCode alpha2) const {
  auto it = by_alpha2_.find(alpha2);
  return it == by_alpha2_.end() ? nullptr : &records_[it->second];
}

const CountryRecord* CountryTable::FindAlpha3(std::string_view alpha3) const {
  auto it = by_alpha3_.find(AsciiLower(TrimView(alpha3)));
  return it == by_alpha3_.end() ? nullptr : &records_[it->second];
}

std::u32string ToCodePoints(std::string_view utf8) {
  std::string clean(utf8);
  SanitizeUtf8(&clean);
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(clean);
  std::u32string out;
  out.reserve(static_cast<size_t>(u.countChar32()));
  for (int32_t i = 0; i < u.length(); i = u.moveIndex32(i, 1)) {
    out.push_back(static_cast<char32_t>(u.char32At(i)));
  }
  return out;
}

std::string NormalizeCountryKey(std::string_view text) {
  std::string folded = CaseFold(text);
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(folded);
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < u.length(); i = u.moveIndex32(i, 1)) {
    UChar32 c = u.char32At(i);
    if (c == '.' || c == '\'' || c == 0x2019) continue;
    if (u_isalnum(c) || u_getCombiningClass(c) != 0) {
      if (pending_space && !out.isEmpty()) out.append(static_cast<UChar>(' '));
      pending_space = false;
      out.append(c);
    } else {
      pending_space = true;
    }
  }
  std::string result;
  out.toUTF8String(result);
  return result;
}

double NameSimilarity(std::u32string_view a, std::u32string_view b) {
  size_t n = a.size(), m = b.size();
  if (n == 0 && m == 0) return 1.0;
  std::vector<size_t> prev(m + 1), cur(m + 1);
  for (size_t j = 0; j <= m; ++j) prev[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= m; ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return 1.0 - static_cast<double>(prev[m]) / static_cast<double>(std::max(n, m));
}

std::optional<CountryMatch> CountryTable::Match(std::string_view raw,
                                                const CountryMatchOptions& options) const {
  std::string_view trimmed = TrimView(raw);
  if (trimmed.empty()) throw InputError("empty country text");

  if (auto it = exact_.find(CaseFold(trimmed)); it != exact_.end()) {
    return CountryMatch{&records_[it->second], false, 1.0};
  }
  std::string key = NormalizeCountryKey(trimmed);
  if (key.empty()) return std::nullopt;
  if (auto it = normalized_exact_.find(key); it != normalized_exact_.end()) {
    return CountryMatch{&records_[it->second], true, 1.0};
  }
  std::u32string query = ToCodePoints(key);
  const double threshold = options.min_similarity;
  double best = -1;
  size_t best_row = 0;
  for (const auto& [name, row] : fuzzy_names_) {
    // The length difference alone bounds the similarity from above.
    size_t longer = std::max(name.size(), query.size());
    size_t diff = name.size() > query.size() ? name.size() - query.size()
                                             : query.size() - name.size();
    double bound = 1.0 - static_cast<double>(diff) / static_cast<double>(longer);
    if (bound < threshold || bound <= best) continue;
    double sim = NameSimilarity(query, name);
    if (sim > best || (sim == best && row < best_row)) {
      best = sim;
      best_row = row;
    }
  }
  if (best >= threshold) return CountryMatch{&records_[best_row], true, best};
  return std::nullopt;
}

std::optional<CountryMatch> NormalizeCountry(std::string_view raw, const CountryTable& table,
                                             const CountryMatchOptions& options) {
  return table.Match(raw, options);
}

TerritoryTable::TerritoryTable(std::unordered_map<CountryCode, CountryCode> parents)
    : parents_(std::move(parents)) {
  for (const auto& [territory, parent] : parents_) {
    if (territory == parent) {
      throw InputError("territory " + territory.str() + " maps to itself");
    }
    if (parents_.count(parent)) {
      throw InputError("territory parent " + parent.str() + " is itself a territory");
    }
  }
}

TerritoryTable TerritoryTable::Read(DelimitedReader& reader) {
  std::unordered_map<CountryCode, CountryCode> parents;
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    if (f.size() != 2) {
      throw InputError("territory table line " + std::to_string(reader.line_number()) +
                       ": expected 2 columns");
    }
    auto territory = CountryCode::FromString(f[0]);
    auto parent = CountryCode::FromString(f[1]);
    if (!parents.emplace(territory, parent).second) {
      throw InputError("duplicate territory " + territory.str());
    }
  }
  return TerritoryTable(std::move(parents));
}

TerritoryTable TerritoryTable::Load(const std::filesystem::path& path) {
  DelimitedReader reader(path, DelimitedFormat::EnrichedCsv());
  return Read(reader);
}

const TerritoryTable& TerritoryTable::Bundled() {
  static const TerritoryTable kTable = [] {
    DelimitedReader reader(std::string(embedded::TerritoryTableCsv()),
                           DelimitedFormat::EnrichedCsv());
    return Read(reader);
  }();
  return kTable;
}

std::optional<CountryCode> TerritoryTable::Parent(CountryCode code) const {
  auto it = parents_.find(code);
  if (it == parents_.end()) return std::nullopt;
  return it->second;
}

std::optional<CountryCode> SecondaryCountry(CountryCode alpha2,
                                            const TerritoryTable& territories) {
  return territories.Parent(alpha2);
}

}  // namespace kgenrich
