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

// Infobox extraction from pre-fetched wikitext.

#ifndef KGENRICH_INFOBOX_H_
#define KGENRICH_INFOBOX_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgenrich/country.h"
#include "kgenrich/geo_enrichment.h"

namespace kgenrich {

class Gazetteer;

struct InfoboxPair {
  std::string key;        // casefolded, trimmed
  std::string value;      // markup stripped
  std::string raw_value;  // verbatim
};

struct InfoboxRaw {
  std::string affiliation_id;
  std::vector<InfoboxPair> pairs;
};

// Finds the first `{{Infobox ...}}` template and returns its named
// parameters in order. Nesting of templates and links is tracked by depth so
// only top-level `|` separators split parameters. No infobox yields no
// pairs; arbitrary input never throws.
InfoboxRaw ParseInfobox(std::string_view wikitext);

// Best-effort wikitext to plain text: `[[a|b]]` -> b, `[[a]]` -> a,
// `[url label]` -> url, templates collapse to their first positional
// argument (date templates join their numeric arguments with '-'),
// references and comments are dropped, `<br>` becomes a newline, other tags
// are removed, and bold/italic quotes go away.
std::string StripWikiMarkup(std::string_view value);

struct InfoboxFields {
  std::optional<std::string> city;
  std::optional<std::string> state;
  std::optional<std::string> country;
  std::optional<std::string> acronym;
  std::optional<std::string> foundation_date;
  std::optional<std::string> homepage;
  std::optional<std::string> entity_type;
  // The chosen city value listed more than one place; only the first is kept.
  bool multi_location = false;

  friend bool operator==(const InfoboxFields&, const InfoboxFields&) = default;
};

// Keyword priorities, earliest listed wins regardless of infobox order.
// '_' and ' ' are interchangeable in keys.
inline const std::vector<std::string_view> kCityKeys = {"city", "location", "headquarter"};
inline const std::vector<std::string_view> kFoundationKeys = {"foundation", "foundation_date",
                                                              "established"};
inline const std::vector<std::string_view> kHomepageKeys = {"homepage", "url", "website"};
inline const std::vector<std::string_view> kAcronymKeys = {"acronym", "abbreviation"};

InfoboxFields ExtractFields(const InfoboxRaw& raw);

struct ResolveStats {
  int64_t city_matches = 0;
  int64_t country_from_country = 0;
  int64_t country_from_state = 0;
  int64_t country_from_city = 0;
};

// Infobox-based geolocation. The city is looked up in the gazetteer; the
// country comes from the country text, else the state text, else the
// matched city's country. City coordinates are attached when the gazetteer
// match agrees with the resolved country.
GeoEnrichment ResolveLocation(const InfoboxFields& fields, const Gazetteer& gazetteer,
                              const CountryTable& countries,
                              const CountryMatchOptions& options = {},
                              ResolveStats* stats = nullptr);

// affiliation_id -> verbatim wikitext.
class InfoboxStore {
 public:
  InfoboxStore() = default;
  void Add(std::string affiliation_id, std::string wikitext);
  const std::string* Find(std::string_view affiliation_id) const;
  size_t size() const { return docs_.size(); }

 private:
  std::unordered_map<std::string, std::string> docs_;
};

}  // namespace kgenrich

#endif  // KGENRICH_INFOBOX_H_
