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

// Offline gazetteer of populated places with an exact nearest-city index.
//
// Points are stored as unit vectors on the sphere and indexed by a 3-d k-d
// tree. Chord length is monotone in great-circle distance, so the tree prunes
// on chord length (with a small slack) while candidates are ranked by the
// same key a linear scan would use: haversine distance, then larger
// population, then city name.

#ifndef KGENRICH_GAZETTEER_H_
#define KGENRICH_GAZETTEER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgenrich/common.h"

namespace kgenrich {

class CountryTable;
class DelimitedReader;

inline constexpr double kEarthRadiusKm = 6371.0088;

double HaversineKm(double lat1, double lon1, double lat2, double lon2);

struct GazetteerEntry {
  std::string city_name;
  std::vector<std::string> alt_names;
  double latitude = 0;
  double longitude = 0;
  CountryCode country_alpha2;
  std::string admin1;
  int64_t population = 0;
};

class Gazetteer {
 public:
  struct Hit {
    const GazetteerEntry* entry = nullptr;
    double distance_km = 0;
  };

  // Validates coordinates (and country codes when `countries` is given) and
  // builds the spatial and name indexes. Throws InputError.
  explicit Gazetteer(std::vector<GazetteerEntry> entries, const CountryTable* countries = nullptr);

  // CSV with header: name, alt_names (';'-joined), latitude, longitude,
  // country_alpha2, admin1, population.
  static Gazetteer Load(const std::filesystem::path& path, const CountryTable* countries = nullptr);
  static Gazetteer Read(DelimitedReader& reader, const CountryTable* countries = nullptr);

  // Nearest entry by great-circle distance. Throws InputError for
  // out-of-range coordinates or an empty gazetteer.
  Hit Nearest(double latitude, double longitude) const;

  // Entries whose name or alternate name equals `name` after case folding,
  // ordered by population (descending) then name.
  std::vector<const GazetteerEntry*> FindByName(std::string_view name) const;

  const std::vector<GazetteerEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

 private:
  struct Node {
    uint32_t entry;
    uint8_t axis;
  };

  void Build(size_t lo, size_t hi);
  void Search(size_t lo, size_t hi, const std::array<double, 3>& q, double lat, double lon,
              Hit* best, double* best_chord) const;
  bool Better(const GazetteerEntry& a, double da, const GazetteerEntry& b, double db) const;

  std::vector<GazetteerEntry> entries_;
  std::vector<std::array<double, 3>> points_;
  // Implicit balanced tree: the node for [lo, hi) sits at (lo + hi) / 2.
  std::vector<Node> tree_;
  std::unordered_map<std::string, std::vector<uint32_t>> by_name_;
};

// Converts latitude/longitude in degrees to a point on the unit sphere.
std::array<double, 3> ToUnitVector(double latitude, double longitude);

}  // namespace kgenrich

#endif  // KGENRICH_GAZETTEER_H_
