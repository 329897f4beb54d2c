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

// Affiliation geolocation: reverse geocoding against the gazetteer, the
// infobox route, and the rules that merge the two.

#ifndef KGENRICH_GEOCODE_H_
#define KGENRICH_GEOCODE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kgenrich/country.h"
#include "kgenrich/gazetteer.h"
#include "kgenrich/geo_enrichment.h"
#include "kgenrich/infobox.h"
#include "kgenrich/ingest.h"

namespace kgenrich {

// Partial enrichment from a gazetteer hit: city, city coordinates, admin1 as
// state, and the country row.
GeoEnrichment ReverseEnrichment(const Gazetteer::Hit& hit, const CountryTable& countries);

struct MergeStats {
  int64_t postcode_conflicts = 0;
  int64_t country_conflicts = 0;
};

// Combines the reverse and infobox partials:
//  - a reverse result with a country is the base; when the infobox country
//    agrees, missing city/state are filled from it, and the infobox city
//    coordinates replace the reverse ones only when both city names match
//    after case folding;
//  - without a reverse country, the infobox geographic fields are taken
//    wholesale;
//  - foundation date, entity type, acronym and homepage always come from the
//    infobox when it has them.
// Provenance is kMerged when both sources changed the result. The reverse
// postcode wins a conflict. Throws InputError when both are absent.
GeoEnrichment MergeGeoSources(const std::optional<GeoEnrichment>& reverse,
                              const std::optional<GeoEnrichment>& urlbased,
                              MergeStats* stats = nullptr);

struct EnrichOptions {
  // Reverse hits farther than this are ignored.
  std::optional<double> max_distance_km;
  CountryMatchOptions country;
};

struct EnrichStats {
  int64_t affiliations = 0;
  int64_t reverse_located = 0;
  int64_t beyond_max_distance = 0;
  int64_t with_infobox = 0;
  int64_t url_located = 0;
  int64_t merged = 0;
  int64_t unlocated = 0;
  int64_t multi_location = 0;
  int64_t secondary_country = 0;
  MergeStats merge;
  ResolveStats resolve;
};

// One enrichment per affiliation, in input order. Affiliations with neither
// coordinates nor a usable infobox produce an empty record (provenance
// kNone) and count as unlocated.
std::vector<GeoEnrichment> EnrichAffiliations(std::span<const AffiliationRecord> affiliations,
                                              const Gazetteer& gazetteer,
                                              const CountryTable& countries,
                                              const TerritoryTable& territories,
                                              const InfoboxStore* infoboxes,
                                              const EnrichOptions& options = {},
                                              EnrichStats* stats = nullptr);

}  // namespace kgenrich

#endif  // KGENRICH_GEOCODE_H_
