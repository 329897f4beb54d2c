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

// Geolocated careers and the mobility tables derived from them.
//
// Terms used below:
//  - annual location: the modal country among an author's entries in a year;
//  - career nationality: the country of the author's first geolocated
//    entry;
//  - working native of C: an author whose career nationality is C;
//  - stock(C, y): authors located in C in year y who are not working
//    natives of C;
//  - flow: a change between consecutive observed annual locations.
//
// Ties (modal country, first entry within a year) are broken by paper_id in
// ascending byte order.

#ifndef KGENRICH_MOBILITY_H_
#define KGENRICH_MOBILITY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgenrich/common.h"
#include "kgenrich/ingest.h"

namespace kgenrich {

struct CareerEntry {
  std::string paper_id;
  std::optional<std::string> affiliation_id;
  std::optional<CountryCode> country;

  friend bool operator==(const CareerEntry&, const CareerEntry&) = default;
};

struct CareerYear {
  std::string author_id;
  int year = 0;
  // Sorted by (paper_id, affiliation_id).
  std::vector<CareerEntry> entries;

  friend bool operator==(const CareerYear&, const CareerYear&) = default;
};

struct AnnualLocation {
  std::string author_id;
  int year = 0;
  CountryCode country;

  friend bool operator==(const AnnualLocation&, const AnnualLocation&) = default;
};

struct CareerNationality {
  std::string author_id;
  CountryCode country;
  int established_year = 0;

  friend bool operator==(const CareerNationality&, const CareerNationality&) = default;
};

// One author's observed locations (ascending years) plus nationality.
struct AuthorMobility {
  std::string author_id;
  std::optional<CareerNationality> nationality;
  std::vector<std::pair<int, CountryCode>> locations;

  friend bool operator==(const AuthorMobility&, const AuthorMobility&) = default;
};

struct StockEntry {
  CountryCode country;
  int year = 0;
  int64_t stock = 0;
  int64_t located_authors = 0;
  int64_t working_natives = 0;
  int64_t no_nationality = 0;

  friend bool operator==(const StockEntry&, const StockEntry&) = default;
};

struct FlowEdge {
  int year = 0;
  CountryCode origin;
  CountryCode destination;
  int64_t weight = 0;
  int64_t returners = 0;
  int64_t origin_natives = 0;
  int64_t destination_natives = 0;

  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

struct CountryFlowTotals {
  int year = 0;
  CountryCode country;
  int64_t total_in = 0;
  int64_t total_out = 0;

  friend bool operator==(const CountryFlowTotals&, const CountryFlowTotals&) = default;
};

using AffiliationCountryMap = std::unordered_map<std::string, CountryCode>;

struct CareerStats {
  int64_t triples = 0;
  int64_t duplicate_triples = 0;
  int64_t geolocated_entries = 0;
  int64_t ungeolocated_entries = 0;
};

// Groups joined triples by (author, year). Output is sorted by author_id then
// year; exact duplicate triples are dropped.
std::vector<CareerYear> BuildCareers(std::vector<AuthorshipTriple> triples,
                                     const AffiliationCountryMap& geo,
                                     CareerStats* stats = nullptr);

std::optional<AnnualLocation> ComputeAnnualLocation(const CareerYear& career_year);

// `years` must belong to one author, sorted by year.
std::optional<CareerNationality> ComputeCareerNationality(std::span<const CareerYear> years);

// Annual locations and nationality for every author in `careers` (sorted as
// BuildCareers returns them). Authors are processed in independent chunks
// across `parallelism` threads; output order matches input order.
std::vector<AuthorMobility> ComputeAuthorMobility(std::span<const CareerYear> careers,
                                                  int parallelism = 1);

struct StockStats {
  int64_t located_without_nationality = 0;
};

// Sorted by (country, year).
std::vector<StockEntry> ComputeStocks(std::span<const AuthorMobility> authors,
                                      StockStats* stats = nullptr);

// Convenience overload joining separate location and nationality lists by
// author_id.
std::vector<StockEntry> ComputeStocks(std::span<const AnnualLocation> locations,
                                      std::span<const CareerNationality> nationalities,
                                      StockStats* stats = nullptr);

// Movements between consecutive observed locations, attributed to the
// arrival year, aggregated per (year, origin, destination) and sorted that
// way.
std::vector<FlowEdge> ComputeFlows(std::span<const AuthorMobility> authors);

// Per (year, country) inflow and outflow totals, sorted by (year, country).
std::vector<CountryFlowTotals> AggregateCountryFlows(std::span<const FlowEdge> flows);

// Groups separate lists into AuthorMobility records sorted by author_id.
std::vector<AuthorMobility> GroupMobility(std::span<const AnnualLocation> locations,
                                          std::span<const CareerNationality> nationalities);

// JSON Lines encodings.
std::string CareerToJson(std::span<const CareerYear> author_years);
std::string MobilityToJson(const AuthorMobility& author);
AuthorMobility MobilityFromJson(std::string_view line);
std::vector<CareerYear> CareerFromJson(std::string_view line);

}  // namespace kgenrich

#endif  // KGENRICH_MOBILITY_H_
