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

#include "kgenrich/gazetteer.h"

#include <gtest/gtest.h>

#include <random>

#include "kgenrich/country.h"
#include "kgenrich/csv.h"
#include "support/oracles.h"
#include "support/test_util.h"

namespace kgenrich {
namespace {

GazetteerEntry Entry(std::string name, double lat, double lon, std::string_view cc, int64_t pop = 0) {
  GazetteerEntry e;
  e.city_name = std::move(name);
  e.latitude = lat;
  e.longitude = lon;
  e.country_alpha2 = CountryCode::FromString(cc);
  e.population = pop;
  return e;
}

Gazetteer SmallGazetteer() {
  return Gazetteer({Entry("Paris", 48.8566, 2.3522, "FR", 2148000), Entry("Pisa", 43.7228, 10.4017, "IT", 90000),
                    Entry("San Juan", 18.4655, -66.1057, "PR", 342000)});
}

std::vector<oracle::Place> Places(const Gazetteer& g) {
  std::vector<oracle::Place> out;
  for (const GazetteerEntry& e : g.entries()) out.push_back({e.city_name, e.latitude, e.longitude, e.population});
  return out;
}

TEST(HaversineTest, KnownDistances) {
  EXPECT_DOUBLE_EQ(HaversineKm(10, 20, 10, 20), 0.0);
  // A quarter meridian.
  EXPECT_NEAR(HaversineKm(0, 0, 90, 0), kEarthRadiusKm * M_PI / 2, 1e-9);
  EXPECT_NEAR(HaversineKm(0, 0, 0, 180), kEarthRadiusKm * M_PI, 1e-6);
  EXPECT_NEAR(HaversineKm(48.8566, 2.3522, 43.7228, 10.4017),
              oracle::GreatCircleKm(48.8566, 2.3522, 43.7228, 10.4017), 1e-9);
}

TEST(ReverseGeocodeTest, ExactCoordinateMatch) {
  Gazetteer g = SmallGazetteer();
  auto hit = g.Nearest(48.8566, 2.3522);
  EXPECT_EQ(hit.entry->city_name, "Paris");
  EXPECT_DOUBLE_EQ(hit.distance_km, 0.0);
}

TEST(ReverseGeocodeTest, NearbyPointAgreesWithLinearScan) {
  Gazetteer g = SmallGazetteer();
  auto hit = g.Nearest(48.90, 2.40);
  EXPECT_EQ(hit.entry->city_name, "Paris");
  size_t expected = oracle::NearestLinear(Places(g), 48.90, 2.40);
  EXPECT_EQ(hit.entry, &g.entries()[expected]);
  EXPECT_NEAR(hit.distance_km, oracle::GreatCircleKm(48.90, 2.40, 48.8566, 2.3522), 1e-9);
}

TEST(ReverseGeocodeTest, OutOfRangeAndEmptyAreInputErrors) {
  Gazetteer g = SmallGazetteer();
  EXPECT_THROW(g.Nearest(91.0, 0.0), InputError);
  EXPECT_THROW(g.Nearest(0.0, 180.5), InputError);
  EXPECT_THROW(g.Nearest(std::nan(""), 0.0), InputError);
  Gazetteer empty({});
  EXPECT_THROW(empty.Nearest(0, 0), InputError);
}

TEST(ReverseGeocodeTest, TiesPreferLargerPopulationThenName) {
  Gazetteer g({Entry("Zeta", 10, 10, "FR", 5), Entry("Alpha", 10, 10, "FR", 5), Entry("Big", 10, 10, "FR", 9)});
  EXPECT_EQ(g.Nearest(10, 10).entry->city_name, "Big");
  Gazetteer h({Entry("Zeta", 10, 10, "FR", 5), Entry("Alpha", 10, 10, "FR", 5)});
  EXPECT_EQ(h.Nearest(10, 10).entry->city_name, "Alpha");
}

TEST(ReverseGeocodeTest, AntimeridianAndPoles) {
  Gazetteer g({Entry("East", 0, 179.9, "FJ"), Entry("West", 0, -179.8, "WS"), Entry("Far", 0, 150, "PG"),
               Entry("North", 89.9, 0, "NO")});
  EXPECT_EQ(g.Nearest(0, -179.99).entry->city_name, "East");
  EXPECT_EQ(g.Nearest(0, 179.95).entry->city_name, "East");
  EXPECT_EQ(g.Nearest(90, 120).entry->city_name, "North");
}

// Property: the indexed search equals a linear scan on random data,
// including clustered and duplicated points.
TEST(ReverseGeocodeTest, MatchesLinearScanOnRandomGazetteers) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180), jitter(-0.01, 0.01);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<GazetteerEntry> entries;
    for (int i = 0; i < 800; ++i) {
      double a = lat(rng), b = lon(rng);
      if (i % 5 == 0 && !entries.empty()) {
        a = std::clamp(entries.back().latitude + jitter(rng), -90.0, 90.0);
        b = std::clamp(entries.back().longitude + jitter(rng), -180.0, 180.0);
      }
      if (i % 17 == 0 && !entries.empty()) {
        a = entries.back().latitude;
        b = entries.back().longitude;
      }
      entries.push_back(Entry("c" + std::to_string(rng() % 500), a, b, "FR", static_cast<int64_t>(rng() % 4)));
    }
    Gazetteer g(entries);
    auto places = Places(g);
    for (int q = 0; q < 300; ++q) {
      double a = lat(rng), b = lon(rng);
      if (q % 3 == 0) {
        const auto& e = g.entries()[rng() % g.size()];
        a = e.latitude;
        b = e.longitude;
      }
      size_t expected = oracle::NearestLinear(places, a, b);
      auto hit = g.Nearest(a, b);
      ASSERT_EQ(hit.entry, &g.entries()[expected]) << a << "," << b;
    }
  }
}

TEST(GazetteerTest, FindByNameUsesAltNamesAndCaseFolding) {
  GazetteerEntry paris = Entry("Paris", 48.8566, 2.3522, "FR", 2148000);
  paris.alt_names = {"Paname"};
  Gazetteer g({paris, Entry("Paris", 33.66, -95.55, "US", 25000), Entry("Lyon", 45.76, 4.83, "FR", 513000)});
  auto hits = g.FindByName("PARIS");
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0]->country_alpha2.str(), "FR");
  EXPECT_EQ(hits[1]->country_alpha2.str(), "US");
  ASSERT_EQ(g.FindByName("paname").size(), 1u);
  EXPECT_TRUE(g.FindByName("Atlantis").empty());
}

TEST(GazetteerTest, ValidatesEntries) {
  EXPECT_THROW(Gazetteer({Entry("Bad", 95, 0, "FR")}), InputError);
  GazetteerEntry no_country = Entry("X", 0, 0, "FR");
  no_country.country_alpha2 = CountryCode();
  EXPECT_THROW(Gazetteer({no_country}), InputError);
  EXPECT_THROW(Gazetteer({Entry("X", 0, 0, "QQ")}, &CountryTable::Bundled()), InputError);
}

TEST(GazetteerTest, LoadsFixtureCsv) {
  Gazetteer g = Gazetteer::Load(testing::TestDataDir() / "fixture" / "gazetteer.csv", &CountryTable::Bundled());
  EXPECT_EQ(g.size(), 9u);
  EXPECT_EQ(g.FindByName("Cambridge").size(), 2u);
  EXPECT_EQ(g.FindByName("Paname").at(0)->city_name, "Paris");
  EXPECT_EQ(g.Nearest(42.3601, -71.0942).entry->city_name, "Cambridge");
}

}  // namespace
}  // namespace kgenrich
