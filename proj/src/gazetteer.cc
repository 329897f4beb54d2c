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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kgenrich/country.h"
#include "kgenrich/csv.h"

namespace kgenrich {

namespace {

// Slack on chord-length pruning (unit sphere, about 6 micrometres) so that
// rounding never prunes a candidate the linear scan would pick.
constexpr double kChordSlack = 1e-9;

constexpr double kDegToRad = std::numbers::pi / 180.0;

double ChordSquared(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

void CheckCoordinates(double lat, double lon) {
  if (!(lat >= -90 && lat <= 90) || !(lon >= -180 && lon <= 180)) {
    throw InputError("coordinates out of range: (" + FormatDouble(lat) + ", " +
                     FormatDouble(lon) + ")");
  }
}

}  // namespace

double HaversineKm(double lat1, double lon1, double lat2, double lon2) {
  double phi1 = lat1 * kDegToRad, phi2 = lat2 * kDegToRad;
  double dphi = (lat2 - lat1) * kDegToRad;
  double dlambda = (lon2 - lon1) * kDegToRad;
  double s1 = std::sin(dphi / 2), s2 = std::sin(dlambda / 2);
  double a = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

std::array<double, 3> ToUnitVector(double latitude, double longitude) {
  double phi = latitude * kDegToRad, lambda = longitude * kDegToRad;
  return {std::cos(phi) * std::cos(lambda), std::cos(phi) * std::sin(lambda), std::sin(phi)};
}

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries, const CountryTable* countries)
    : entries_(std::move(entries)) {
  if (entries_.size() >= UINT32_MAX) throw InputError("gazetteer too large");
  points_.reserve(entries_.size());
  tree_.resize(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    const GazetteerEntry& e = entries_[i];
    CheckCoordinates(e.latitude, e.longitude);
    if (e.population < 0) throw InputError("negative population for " + e.city_name);
    if (e.country_alpha2.empty()) throw InputError("gazetteer entry without country: " + e.city_name);
    if (countries && !countries->Find(e.country_alpha2)) {
      throw InputError("gazetteer country " + e.country_alpha2.str() + " not in country table");
    }
    points_.push_back(ToUnitVector(e.latitude, e.longitude));
    tree_[i].entry = static_cast<uint32_t>(i);

    std::vector<std::string> keys = {CaseFold(e.city_name)};
    for (const auto& alt : e.alt_names) keys.push_back(CaseFold(alt));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (auto& k : keys) {
      if (!k.empty()) by_name_[k].push_back(static_cast<uint32_t>(i));
    }
  }
  Build(0, entries_.size());
  for (auto& [name, ids] : by_name_) {
    std::stable_sort(ids.begin(), ids.end(), [&](uint32_t a, uint32_t b) {
      const auto& ea = entries_[a];
      const auto& eb = entries_[b];
      if (ea.population != eb.population) return ea.population > eb.population;
      return ea.city_name < eb.city_name;
    });
  }
}

Gazetteer Gazetteer::Read(DelimitedReader& reader, const CountryTable* countries) {
  std::vector<GazetteerEntry> entries;
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    auto where = [&] { return "gazetteer line " + std::to_string(reader.line_number()); };
    if (f.size() != 7) throw InputError(where() + ": expected 7 columns");
    GazetteerEntry e;
    e.city_name = Trim(f[0]);
    if (e.city_name.empty()) throw InputError(where() + ": empty name");
    if (!TrimView(f[1]).empty()) {
      for (auto alt : SplitView(f[1], ';')) {
        if (!TrimView(alt).empty()) e.alt_names.push_back(Trim(alt));
      }
    }
    auto lat = ParseDouble(f[2]);
    auto lon = ParseDouble(f[3]);
    if (!lat || !lon) throw InputError(where() + ": bad coordinates");
    e.latitude = *lat;
    e.longitude = *lon;
    auto code = CountryCode::Parse(f[4]);
    if (!code) throw InputError(where() + ": bad country code '" + f[4] + "'");
    e.country_alpha2 = *code;
    e.admin1 = Trim(f[5]);
    if (!TrimView(f[6]).empty()) {
      auto pop = ParseInt(f[6]);
      if (!pop) throw InputError(where() + ": bad population '" + f[6] + "'");
      e.population = *pop;
    }
    entries.push_back(std::move(e));
  }
  return Gazetteer(std::move(entries), countries);
}

Gazetteer Gazetteer::Load(const std::filesystem::path& path, const CountryTable* countries) {
  DelimitedReader reader(path, DelimitedFormat::EnrichedCsv());
  return Read(reader, countries);
}

void Gazetteer::Build(size_t lo, size_t hi) {
  if (hi - lo <= 1) {
    if (hi > lo) tree_[lo].axis = 0;
    return;
  }
  std::array<double, 3> min{2, 2, 2}, max{-2, -2, -2};
  for (size_t i = lo; i < hi; ++i) {
    const auto& p = points_[tree_[i].entry];
    for (int k = 0; k < 3; ++k) {
      min[k] = std::min(min[k], p[k]);
      max[k] = std::max(max[k], p[k]);
    }
  }
  uint8_t axis = 0;
  for (uint8_t k = 1; k < 3; ++k) {
    if (max[k] - min[k] > max[axis] - min[axis]) axis = k;
  }
  size_t mid = lo + (hi - lo) / 2;
  std::nth_element(tree_.begin() + lo, tree_.begin() + mid, tree_.begin() + hi,
                   [&](const Node& a, const Node& b) {
                     return points_[a.entry][axis] < points_[b.entry][axis];
                   });
  tree_[mid].axis = axis;
  Build(lo, mid);
  Build(mid + 1, hi);
}

bool Gazetteer::Better(const GazetteerEntry& a, double da, const GazetteerEntry& b,
                       double db) const {
  if (da != db) return da < db;
  if (a.population != b.population) return a.population > b.population;
  if (a.city_name != b.city_name) return a.city_name < b.city_name;
  return &a < &b;  // gazetteer row order
}

void Gazetteer::Search(size_t lo, size_t hi, const std::array<double, 3>& q, double lat,
                       double lon, Hit* best, double* best_chord) const {
  if (lo >= hi) return;
  size_t mid = lo + (hi - lo) / 2;
  const Node& node = tree_[mid];
  const auto& p = points_[node.entry];

  double chord = std::sqrt(ChordSquared(q, p));
  if (!best->entry || chord <= *best_chord + kChordSlack) {
    const GazetteerEntry& e = entries_[node.entry];
    double d = HaversineKm(lat, lon, e.latitude, e.longitude);
    if (!best->entry || Better(e, d, *best->entry, best->distance_km)) {
      best->entry = &e;
      best->distance_km = d;
      *best_chord = chord;
    }
  }
  if (hi - lo == 1) return;

  double diff = q[node.axis] - p[node.axis];
  size_t near_lo = lo, near_hi = mid, far_lo = mid + 1, far_hi = hi;
  if (diff > 0) {
    std::swap(near_lo, far_lo);
    std::swap(near_hi, far_hi);
  }
  Search(near_lo, near_hi, q, lat, lon, best, best_chord);
  double reach = *best_chord + kChordSlack;
  if (diff * diff <= reach * reach) Search(far_lo, far_hi, q, lat, lon, best, best_chord);
}

Gazetteer::Hit Gazetteer::Nearest(double latitude, double longitude) const {
  CheckCoordinates(latitude, longitude);
  if (entries_.empty()) throw InputError("gazetteer is empty");
  Hit best;
  double best_chord = 0;
  Search(0, tree_.size(), ToUnitVector(latitude, longitude), latitude, longitude, &best,
         &best_chord);
  return best;
}

std::vector<const GazetteerEntry*> Gazetteer::FindByName(std::string_view name) const {
  std::vector<const GazetteerEntry*> out;
  auto it = by_name_.find(CaseFold(TrimView(name)));
  if (it == by_name_.end()) return out;
  for (uint32_t i : it->second) out.push_back(&entries_[i]);
  return out;
}

}  // namespace kgenrich
