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

#include <array>
#include <regex>

namespace kgenrich {

// ---- GeoEnrichment --------------------------------------------------------

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kReverse: return "reverse";
    case Provenance::kUrl: return "url";
    case Provenance::kMerged: return "merged";
    case Provenance::kNone: break;
  }
  return "none";
}

std::optional<Provenance> ParseProvenance(std::string_view s) {
  if (s == "reverse") return Provenance::kReverse;
  if (s == "url") return Provenance::kUrl;
  if (s == "merged") return Provenance::kMerged;
  if (s == "none" || s.empty()) return Provenance::kNone;
  return std::nullopt;
}

void GeoEnrichment::SetCountry(const CountryRecord& record) {
  country_alpha2 = record.alpha2;
  country_alpha3 = record.alpha3;
  country_official_name = record.official_name;
  country_common_name = record.common_name;
}

void GeoEnrichment::ClearCountry() {
  country_alpha2.reset();
  country_alpha2_secondary.reset();
  country_alpha3.clear();
  country_official_name.clear();
  country_common_name.clear();
}

void GeoEnrichment::ClearCity() {
  city.reset();
  city_latitude.reset();
  city_longitude.reset();
}

const std::vector<std::string>& GeoEnrichmentColumns() {
  static const std::vector<std::string> kColumns = {
      "affiliation_id",        "city",
      "city_latitude",         "city_longitude",
      "state",                 "postcode",
      "country_alpha2",        "country_alpha2_secondary",
      "country_alpha3",        "country_official_name",
      "country_common_name",   "foundation_date",
      "foundation_date_raw",   "entity_type",
      "acronym",               "homepage",
      "provenance"};
  return kColumns;
}

namespace {

std::string Opt(const std::optional<std::string>& v) { return v.value_or(""); }
std::string Opt(const std::optional<double>& v) { return v ? FormatDouble(*v) : ""; }
std::string Opt(const std::optional<CountryCode>& v) { return v ? v->str() : ""; }

std::optional<std::string> OptText(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

std::optional<double> OptDouble(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto v = ParseDouble(s);
  if (!v) throw InputError("bad number '" + s + "' in AffiliationsGeo row");
  return v;
}

std::optional<CountryCode> OptCode(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return CountryCode::FromString(s);
}

}  // namespace

std::vector<std::string> ToCsvRow(const GeoEnrichment& g) {
  return {g.affiliation_id,
          Opt(g.city),
          Opt(g.city_latitude),
          Opt(g.city_longitude),
          Opt(g.state),
          Opt(g.postcode),
          Opt(g.country_alpha2),
          Opt(g.country_alpha2_secondary),
          g.country_alpha3,
          g.country_official_name,
          g.country_common_name,
          Opt(g.foundation_date),
          Opt(g.foundation_date_raw),
          Opt(g.entity_type),
          Opt(g.acronym),
          Opt(g.homepage),
          std::string(ProvenanceName(g.provenance))};
}

GeoEnrichment GeoEnrichmentFromCsvRow(const std::vector<std::string>& row) {
  if (row.size() != GeoEnrichmentColumns().size()) {
    throw InputError("AffiliationsGeo row has " + std::to_string(row.size()) + " columns");
  }
  GeoEnrichment g;
  g.affiliation_id = row[0];
  g.city = OptText(row[1]);
  g.city_latitude = OptDouble(row[2]);
  g.city_longitude = OptDouble(row[3]);
  g.state = OptText(row[4]);
  g.postcode = OptText(row[5]);
  g.country_alpha2 = OptCode(row[6]);
  g.country_alpha2_secondary = OptCode(row[7]);
  g.country_alpha3 = row[8];
  g.country_official_name = row[9];
  g.country_common_name = row[10];
  g.foundation_date = OptText(row[11]);
  g.foundation_date_raw = OptText(row[12]);
  g.entity_type = OptText(row[13]);
  g.acronym = OptText(row[14]);
  g.homepage = OptText(row[15]);
  auto p = ParseProvenance(row[16]);
  if (!p) throw InputError("bad provenance '" + row[16] + "'");
  g.provenance = *p;
  return g;
}

std::optional<std::string> NormalizeFoundationDate(std::string_view text) {
  static const std::array<std::string_view, 12> kMonths = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  static const std::regex kIso(R"(^\s*(\d{3,4})-(\d{1,2})(?:-(\d{1,2}))?\s*$)");
  static const std::regex kDayMonthYear(R"((\d{1,2})\s+([A-Za-z]+)\.?,?\s+(\d{3,4}))");
  static const std::regex kMonthDayYear(R"(([A-Za-z]+)\.?\s+(\d{1,2}),?\s+(\d{3,4}))");
  static const std::regex kMonthYear(R"(([A-Za-z]+)\.?,?\s+(\d{3,4}))");
  static const std::regex kYear(R"((?:^|[^\d])(\d{3,4})(?:[^\d]|$))");

  auto month_of = [&](std::string word) -> int {
    word = AsciiLower(word);
    if (word.size() < 3) return 0;
    for (size_t m = 0; m < kMonths.size(); ++m) {
      if (kMonths[m].substr(0, word.size()) == word) return static_cast<int>(m) + 1;
    }
    return 0;
  };
  auto year_ok = [](int y) { return y >= 100 && y <= 2100; };
  auto fmt = [](int y, int m, int d) {
    char buf[48];
    if (d > 0) {
      std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    } else if (m > 0) {
      std::snprintf(buf, sizeof(buf), "%04d-%02d", y, m);
    } else {
      std::snprintf(buf, sizeof(buf), "%04d", y);
    }
    return std::string(buf);
  };

  std::string s(TrimView(text));
  std::smatch m;
  if (std::regex_match(s, m, kIso)) {
    int y = std::stoi(m[1]), mo = std::stoi(m[2]);
    int d = m[3].matched ? std::stoi(m[3]) : 0;
    if (year_ok(y) && mo >= 1 && mo <= 12 && d >= 0 && d <= 31) return fmt(y, mo, d);
    return std::nullopt;
  }
  if (std::regex_search(s, m, kDayMonthYear)) {
    int mo = month_of(m[2]);
    int y = std::stoi(m[3]), d = std::stoi(m[1]);
    if (mo && year_ok(y) && d >= 1 && d <= 31) return fmt(y, mo, d);
  }
  if (std::regex_search(s, m, kMonthDayYear)) {
    int mo = month_of(m[1]);
    int y = std::stoi(m[3]), d = std::stoi(m[2]);
    if (mo && year_ok(y) && d >= 1 && d <= 31) return fmt(y, mo, d);
  }
  if (std::regex_search(s, m, kMonthYear)) {
    int mo = month_of(m[1]);
    int y = std::stoi(m[2]);
    if (mo && year_ok(y)) return fmt(y, mo, 0);
  }
  if (std::regex_search(s, m, kYear)) {
    int y = std::stoi(m[1]);
    if (year_ok(y)) return fmt(y, 0, 0);
  }
  return std::nullopt;
}

// ---- merge ----------------------------------------------------------------

GeoEnrichment ReverseEnrichment(const Gazetteer::Hit& hit, const CountryTable& countries) {
  GeoEnrichment g;
  g.provenance = Provenance::kReverse;
  if (!hit.entry) return g;
  const GazetteerEntry& e = *hit.entry;
  g.city = e.city_name;
  g.city_latitude = e.latitude;
  g.city_longitude = e.longitude;
  if (!e.admin1.empty()) g.state = e.admin1;
  if (const CountryRecord* c = countries.Find(e.country_alpha2)) g.SetCountry(*c);
  return g;
}

namespace {

template <typename T>
bool Overlay(std::optional<T>* dst, const std::optional<T>& src) {
  if (!src || *dst == src) return false;
  *dst = src;
  return true;
}

void CopyCountry(const GeoEnrichment& from, GeoEnrichment* to) {
  to->country_alpha2 = from.country_alpha2;
  to->country_alpha2_secondary = from.country_alpha2_secondary;
  to->country_alpha3 = from.country_alpha3;
  to->country_official_name = from.country_official_name;
  to->country_common_name = from.country_common_name;
}

}  // namespace

GeoEnrichment MergeGeoSources(const std::optional<GeoEnrichment>& reverse,
                              const std::optional<GeoEnrichment>& urlbased,
                              MergeStats* stats) {
  MergeStats local;
  if (!stats) stats = &local;
  if (!reverse && !urlbased) throw InputError("merge needs at least one geolocation source");

  GeoEnrichment out;
  bool url_changed = false;
  if (reverse && reverse->has_country()) {
    out = *reverse;
    out.provenance = Provenance::kReverse;
    if (urlbased) {
      const GeoEnrichment& url = *urlbased;
      bool same_country = url.country_alpha2 == reverse->country_alpha2;
      if (url.has_country() && !same_country) ++stats->country_conflicts;
      if (same_country) {
        if (!out.city && url.city) {
          out.city = url.city;
          out.city_latitude = url.city_latitude;
          out.city_longitude = url.city_longitude;
          url_changed = true;
        }
        if (!out.state && url.state) {
          out.state = url.state;
          url_changed = true;
        }
      }
      if ((same_country || !url.has_country()) && out.city && url.city &&
          url.has_city_coordinates() && CaseFold(*out.city) == CaseFold(*url.city)) {
        url_changed |= Overlay(&out.city_latitude, url.city_latitude);
        url_changed |= Overlay(&out.city_longitude, url.city_longitude);
      }
      if (url.postcode) {
        if (!out.postcode && same_country) {
          out.postcode = url.postcode;
          url_changed = true;
        } else if (out.postcode && *out.postcode != *url.postcode) {
          ++stats->postcode_conflicts;
        }
      }
    }
  } else if (urlbased) {
    out = *urlbased;
    out.provenance = Provenance::kUrl;
    if (reverse) {
      // A reverse result without a country still counts for its postcode.
      if (reverse->postcode && !out.postcode) {
        out.postcode = reverse->postcode;
        out.provenance = Provenance::kMerged;
      }
    }
  } else {
    out = *reverse;
    out.provenance = Provenance::kReverse;
  }

  if (urlbased && reverse && reverse->has_country()) {
    url_changed |= Overlay(&out.foundation_date, urlbased->foundation_date);
    url_changed |= Overlay(&out.foundation_date_raw, urlbased->foundation_date_raw);
    url_changed |= Overlay(&out.entity_type, urlbased->entity_type);
    url_changed |= Overlay(&out.acronym, urlbased->acronym);
    url_changed |= Overlay(&out.homepage, urlbased->homepage);
    if (url_changed) out.provenance = Provenance::kMerged;
  }
  if (out.affiliation_id.empty() && urlbased) out.affiliation_id = urlbased->affiliation_id;
  if (!out.has_country()) {
    GeoEnrichment blank;
    CopyCountry(blank, &out);
  }
  return out;
}

// ---- pipeline -------------------------------------------------------------

namespace {

bool HasAnything(const GeoEnrichment& g) {
  return g.has_country() || g.city || g.state || g.postcode || g.foundation_date_raw ||
         g.entity_type || g.acronym || g.homepage;
}

}  // namespace

std::vector<GeoEnrichment> EnrichAffiliations(std::span<const AffiliationRecord> affiliations,
                                              const Gazetteer& gazetteer,
                                              const CountryTable& countries,
                                              const TerritoryTable& territories,
                                              const InfoboxStore* infoboxes,
                                              const EnrichOptions& options,
                                              EnrichStats* stats) {
  EnrichStats local;
  if (!stats) stats = &local;
  std::vector<GeoEnrichment> out;
  out.reserve(affiliations.size());
  for (const AffiliationRecord& aff : affiliations) {
    ++stats->affiliations;
    std::optional<GeoEnrichment> reverse;
    if (aff.has_coordinates() && gazetteer.size() > 0) {
      Gazetteer::Hit hit = gazetteer.Nearest(*aff.latitude, *aff.longitude);
      if (options.max_distance_km && hit.distance_km > *options.max_distance_km) {
        ++stats->beyond_max_distance;
      } else {
        reverse = ReverseEnrichment(hit, countries);
        reverse->affiliation_id = aff.affiliation_id;
        if (reverse->has_country()) ++stats->reverse_located;
      }
    }

    std::optional<GeoEnrichment> url;
    if (infoboxes) {
      if (const std::string* doc = infoboxes->Find(aff.affiliation_id)) {
        ++stats->with_infobox;
        InfoboxFields fields = ExtractFields(ParseInfobox(*doc));
        if (fields.multi_location) ++stats->multi_location;
        GeoEnrichment resolved =
            ResolveLocation(fields, gazetteer, countries, options.country, &stats->resolve);
        resolved.affiliation_id = aff.affiliation_id;
        if (HasAnything(resolved)) {
          if (resolved.has_country()) ++stats->url_located;
          url = std::move(resolved);
        }
      }
    }

    GeoEnrichment g;
    if (reverse || url) {
      g = MergeGeoSources(reverse, url, &stats->merge);
    }
    g.affiliation_id = aff.affiliation_id;
    if (g.provenance == Provenance::kMerged) ++stats->merged;
    if (g.has_country()) {
      g.country_alpha2_secondary = SecondaryCountry(*g.country_alpha2, territories);
      if (g.country_alpha2_secondary) ++stats->secondary_country;
    } else {
      ++stats->unlocated;
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace kgenrich
