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

#include "kgenrich/geocode.h"

#include <gtest/gtest.h>

#include <random>

#include "kgenrich/country.h"
#include "kgenrich/gazetteer.h"
#include "kgenrich/ingest.h"
#include "support/test_util.h"

namespace kgenrich {
namespace {

CountryCode CC(std::string_view s) { return CountryCode::FromString(s); }

GeoEnrichment WithCountry(std::string_view cc) {
  GeoEnrichment g;
  g.SetCountry(*CountryTable::Bundled().Find(CC(cc)));
  return g;
}

TEST(MergeGeoSourcesTest, SameCountryFillsStateAndCityCoordinates) {
  GeoEnrichment reverse = WithCountry("FR");
  reverse.city = "Paris";
  reverse.city_latitude = 48.85;
  reverse.city_longitude = 2.35;
  reverse.provenance = Provenance::kReverse;
  GeoEnrichment url = WithCountry("FR");
  url.city = "Paris";
  url.city_latitude = 48.8566;
  url.city_longitude = 2.3522;
  url.state = "Île-de-France";
  url.foundation_date = "1970";
  url.provenance = Provenance::kUrl;

  GeoEnrichment m = MergeGeoSources(reverse, url);
  EXPECT_EQ(m.country_alpha2, CC("FR"));
  EXPECT_EQ(m.city, "Paris");
  EXPECT_EQ(m.city_latitude, 48.8566);
  EXPECT_EQ(m.city_longitude, 2.3522);
  EXPECT_EQ(m.state, "Île-de-France");
  EXPECT_EQ(m.foundation_date, "1970");
  EXPECT_EQ(m.provenance, Provenance::kMerged);
}

TEST(MergeGeoSourcesTest, MissingReverseTakesUrlFields) {
  GeoEnrichment url = WithCountry("IT");
  url.city = "Pisa";
  url.provenance = Provenance::kUrl;
  GeoEnrichment m = MergeGeoSources(GeoEnrichment{}, url);
  EXPECT_EQ(m.country_alpha2, CC("IT"));
  EXPECT_EQ(m.city, "Pisa");
  EXPECT_EQ(m.provenance, Provenance::kUrl);
  EXPECT_EQ(MergeGeoSources(std::nullopt, url), m);
}

TEST(MergeGeoSourcesTest, CityMismatchKeepsReverseCity) {
  GeoEnrichment reverse = WithCountry("US");
  reverse.city = "Cambridge";
  reverse.city_latitude = 42.3736;
  reverse.city_longitude = -71.1097;
  GeoEnrichment url = WithCountry("US");
  url.city = "Boston";
  url.city_latitude = 42.3601;
  url.city_longitude = -71.0589;
  GeoEnrichment m = MergeGeoSources(reverse, url);
  EXPECT_EQ(m.country_alpha2, CC("US"));
  EXPECT_EQ(m.city, "Cambridge");
  EXPECT_EQ(m.city_latitude, 42.3736);
  EXPECT_EQ(m.city_longitude, -71.1097);
  EXPECT_EQ(m.provenance, Provenance::kReverse);
}

TEST(MergeGeoSourcesTest, BothAbsentIsInputError) {
  EXPECT_THROW(MergeGeoSources(std::nullopt, std::nullopt), InputError);
}

TEST(MergeGeoSourcesTest, ReversePostcodeWinsConflict) {
  GeoEnrichment reverse = WithCountry("FR");
  reverse.postcode = "75005";
  GeoEnrichment url = WithCountry("FR");
  url.postcode = "75006";
  MergeStats stats;
  GeoEnrichment m = MergeGeoSources(reverse, url, &stats);
  EXPECT_EQ(m.postcode, "75005");
  EXPECT_EQ(stats.postcode_conflicts, 1);
}

// Property: a reverse country is never replaced, and the country columns are
// always one table row.
TEST(MergeGeoSourcesTest, ReverseCountryAlwaysWins) {
  std::mt19937 rng(21);
  const char* codes[] = {"FR", "US", "IT", "PR", "DE"};
  const char* cities[] = {"Paris", "paris", "Boston", "Pisa"};
  for (int i = 0; i < 1000; ++i) {
    std::optional<GeoEnrichment> reverse, url;
    if (rng() % 4) {
      reverse = rng() % 3 ? WithCountry(codes[rng() % 5]) : GeoEnrichment{};
      if (rng() % 2) reverse->city = cities[rng() % 4];
      if (reverse->city && rng() % 2) {
        reverse->city_latitude = 1;
        reverse->city_longitude = 2;
      }
    }
    if (!reverse || rng() % 3) {
      url = rng() % 3 ? WithCountry(codes[rng() % 5]) : GeoEnrichment{};
      if (rng() % 2) url->city = cities[rng() % 4];
      if (url->city && rng() % 2) {
        url->city_latitude = 3;
        url->city_longitude = 4;
      }
      if (rng() % 2) url->acronym = "X";
    }
    GeoEnrichment m = MergeGeoSources(reverse, url);
    if (reverse && reverse->has_country()) EXPECT_EQ(m.country_alpha2, reverse->country_alpha2);
    if (m.has_country()) {
      const CountryRecord* row = CountryTable::Bundled().Find(*m.country_alpha2);
      ASSERT_NE(row, nullptr);
      EXPECT_EQ(m.country_alpha3, row->alpha3);
      EXPECT_EQ(m.country_common_name, row->common_name);
      EXPECT_EQ(m.country_official_name, row->official_name);
    } else {
      EXPECT_TRUE(m.country_alpha3.empty());
    }
    if (url && url->acronym) EXPECT_EQ(m.acronym, url->acronym);
    if (m.has_city_coordinates()) EXPECT_TRUE(m.city);
  }
}

TEST(NormalizeFoundationDateTest, Formats) {
  EXPECT_EQ(NormalizeFoundationDate("1343"), "1343");
  EXPECT_EQ(NormalizeFoundationDate("1809-10-15"), "1809-10-15");
  EXPECT_EQ(NormalizeFoundationDate("1861-4"), "1861-04");
  EXPECT_EQ(NormalizeFoundationDate("15 October 1809"), "1809-10-15");
  EXPECT_EQ(NormalizeFoundationDate("April 10, 1861"), "1861-04-10");
  EXPECT_EQ(NormalizeFoundationDate("Sept. 1900"), "1900-09");
  EXPECT_EQ(NormalizeFoundationDate("c. 1343"), "1343");
  EXPECT_FALSE(NormalizeFoundationDate("long ago"));
  EXPECT_FALSE(NormalizeFoundationDate("1861-13-01"));
}

TEST(GeoEnrichmentCsvTest, RowRoundTrip) {
  GeoEnrichment g = WithCountry("PR");
  g.affiliation_id = "F3";
  g.city = "San Juan, \"Old\"";
  g.city_latitude = 18.4655;
  g.city_longitude = -66.1057;
  g.country_alpha2_secondary = CC("US");
  g.foundation_date = "1903";
  g.foundation_date_raw = "March 12, 1903";
  g.provenance = Provenance::kMerged;
  auto row = ToCsvRow(g);
  EXPECT_EQ(row.size(), GeoEnrichmentColumns().size());
  EXPECT_EQ(GeoEnrichmentFromCsvRow(row), g);
  EXPECT_THROW(GeoEnrichmentFromCsvRow({"F1"}), InputError);
}

TEST(EnrichAffiliationsTest, FixtureGivesOneRecordPerAffiliation) {
  const auto dir = testing::TestDataDir() / "fixture";
  Manifest manifest = Manifest::Load(dir / "manifest.txt");
  RecordStream<AffiliationRecord> affs(manifest.Get("affiliations"), nullptr);
  std::vector<AffiliationRecord> records = affs.ReadAll();
  ASSERT_EQ(records.size(), 5u);
  RecordStream<InfoboxDocument> docs(manifest.Get("infobox"), nullptr);
  InfoboxStore store;
  for (auto& d : docs.ReadAll()) store.Add(d.affiliation_id, d.wikitext);
  Gazetteer gazetteer = Gazetteer::Load(dir / "gazetteer.csv", &CountryTable::Bundled());

  EnrichStats stats;
  auto out = EnrichAffiliations(records, gazetteer, CountryTable::Bundled(), TerritoryTable::Bundled(), &store,
                                {}, &stats);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_EQ(stats.unlocated, 1);
  EXPECT_EQ(stats.reverse_located, 3);
  EXPECT_EQ(stats.url_located, 2);
  for (size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i].affiliation_id, records[i].affiliation_id);
  EXPECT_EQ(out[0].provenance, Provenance::kReverse);
  EXPECT_EQ(out[0].city, "Paris");
  EXPECT_EQ(out[2].country_alpha2, CC("PR"));
  EXPECT_EQ(out[2].country_alpha2_secondary, CC("US"));
  EXPECT_EQ(out[3].provenance, Provenance::kUrl);
  EXPECT_EQ(out[3].country_alpha2, CC("DE"));
  EXPECT_EQ(out[4].provenance, Provenance::kNone);
  EXPECT_FALSE(out[4].has_country());
  EXPECT_FALSE(out[4].city);
}

TEST(EnrichAffiliationsTest, MaxDistanceForcesUnlocated) {
  AffiliationRecord far;
  far.affiliation_id = "F9";
  far.latitude = 0;
  far.longitude = 0;
  Gazetteer gazetteer = Gazetteer::Load(testing::TestDataDir() / "fixture" / "gazetteer.csv");
  EnrichOptions options;
  options.max_distance_km = 100;
  EnrichStats stats;
  std::vector<AffiliationRecord> records = {far};
  auto out = EnrichAffiliations(records, gazetteer, CountryTable::Bundled(), TerritoryTable::Bundled(), nullptr,
                                options, &stats);
  EXPECT_EQ(stats.beyond_max_distance, 1);
  EXPECT_EQ(stats.unlocated, 1);
  EXPECT_FALSE(out[0].has_country());
  auto unlimited = EnrichAffiliations(records, gazetteer, CountryTable::Bundled(), TerritoryTable::Bundled(),
                                      nullptr);
  EXPECT_TRUE(unlimited[0].has_country());
}

}  // namespace
}  // namespace kgenrich
