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

#ifndef KGENRICH_GEO_ENRICHMENT_H_
#define KGENRICH_GEO_ENRICHMENT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgenrich/common.h"
#include "kgenrich/country.h"

namespace kgenrich {

enum class Provenance { kNone, kReverse, kUrl, kMerged };

std::string_view ProvenanceName(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view s);

// Standardized location and institutional metadata for one affiliation.
// Partial enrichments (one source only) use the same type.
struct GeoEnrichment {
  std::string affiliation_id;

  std::optional<std::string> city;
  std::optional<double> city_latitude;
  std::optional<double> city_longitude;
  std::optional<std::string> state;
  std::optional<std::string> postcode;

  std::optional<CountryCode> country_alpha2;
  std::optional<CountryCode> country_alpha2_secondary;
  std::string country_alpha3;
  std::string country_official_name;
  std::string country_common_name;

  // ISO-8601 year or date; the verbatim source text is kept alongside.
  std::optional<std::string> foundation_date;
  std::optional<std::string> foundation_date_raw;
  std::optional<std::string> entity_type;
  std::optional<std::string> acronym;
  std::optional<std::string> homepage;

  Provenance provenance = Provenance::kNone;

  bool has_country() const { return country_alpha2.has_value(); }
  bool has_city_coordinates() const { return city_latitude && city_longitude; }

  // Copies all country columns from one table row.
  void SetCountry(const CountryRecord& record);
  void ClearCountry();
  void ClearCity();

  friend bool operator==(const GeoEnrichment&, const GeoEnrichment&) = default;
};

// Column order of AffiliationsGeo.csv.
const std::vector<std::string>& GeoEnrichmentColumns();
std::vector<std::string> ToCsvRow(const GeoEnrichment& g);
// Inverse of ToCsvRow; throws InputError on malformed rows.
GeoEnrichment GeoEnrichmentFromCsvRow(const std::vector<std::string>& row);

// Normalizes a foundation date to "YYYY", "YYYY-MM" or "YYYY-MM-DD".
// Returns nullopt when no unambiguous date can be read.
std::optional<std::string> NormalizeFoundationDate(std::string_view text);

}  // namespace kgenrich

#endif  // KGENRICH_GEO_ENRICHMENT_H_
