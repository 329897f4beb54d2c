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

#include "kgenrich/mobility.h"

#include <algorithm>
#include <map>
#include <tuple>

#include <nlohmann/json.hpp>

#include "parallel.h"

namespace kgenrich {

namespace {

// Orders entries by paper_id, then affiliation (absent first).
bool EntryLess(const CareerEntry& a, const CareerEntry& b) {
  if (a.paper_id != b.paper_id) return a.paper_id < b.paper_id;
  return a.affiliation_id < b.affiliation_id;
}

}  // namespace

std::vector<CareerYear> BuildCareers(std::vector<AuthorshipTriple> triples,
                                     const AffiliationCountryMap& geo, CareerStats* stats) {
  CareerStats local;
  if (!stats) stats = &local;
  stats->triples += static_cast<int64_t>(triples.size());
  std::sort(triples.begin(), triples.end(), [](const AuthorshipTriple& a, const AuthorshipTriple& b) {
    return std::tie(a.author_id, a.year, a.paper_id, a.affiliation_id) <
           std::tie(b.author_id, b.year, b.paper_id, b.affiliation_id);
  });

  std::vector<CareerYear> careers;
  const AuthorshipTriple* prev = nullptr;
  for (AuthorshipTriple& t : triples) {
    if (prev && *prev == t) {
      ++stats->duplicate_triples;
      continue;
    }
    if (careers.empty() || careers.back().author_id != t.author_id ||
        careers.back().year != t.year) {
      careers.push_back({t.author_id, t.year, {}});
    }
    CareerEntry entry;
    if (t.affiliation_id) {
      auto it = geo.find(*t.affiliation_id);
      if (it != geo.end()) entry.country = it->second;
    }
    if (entry.country) {
      ++stats->geolocated_entries;
    } else {
      ++stats->ungeolocated_entries;
    }
    entry.paper_id = t.paper_id;
    entry.affiliation_id = t.affiliation_id;
    careers.back().entries.push_back(std::move(entry));
    prev = &t;
  }
  return careers;
}

std::optional<AnnualLocation> ComputeAnnualLocation(const CareerYear& career_year) {
  struct Tally {
    int64_t count = 0;
    const CareerEntry* first = nullptr;
  };
  std::map<CountryCode, Tally> tallies;
  for (const CareerEntry& e : career_year.entries) {
    if (!e.country) continue;
    Tally& t = tallies[*e.country];
    ++t.count;
    if (!t.first || EntryLess(e, *t.first)) t.first = &e;
  }
  if (tallies.empty()) return std::nullopt;
  auto best = tallies.begin();
  for (auto it = std::next(best); it != tallies.end(); ++it) {
    if (it->second.count > best->second.count ||
        (it->second.count == best->second.count && EntryLess(*it->second.first, *best->second.first))) {
      best = it;
    }
  }
  return AnnualLocation{career_year.author_id, career_year.year, best->first};
}

std::optional<CareerNationality> ComputeCareerNationality(std::span<const CareerYear> years) {
  const CareerYear* first_year = nullptr;
  for (const CareerYear& y : years) {
    bool located = std::any_of(y.entries.begin(), y.entries.end(),
                               [](const CareerEntry& e) { return e.country.has_value(); });
    if (located && (!first_year || y.year < first_year->year)) first_year = &y;
  }
  if (!first_year) return std::nullopt;
  const CareerEntry* first = nullptr;
  for (const CareerEntry& e : first_year->entries) {
    if (e.country && (!first || EntryLess(e, *first))) first = &e;
  }
  return CareerNationality{first_year->author_id, *first->country, first_year->year};
}

std::vector<AuthorMobility> ComputeAuthorMobility(std::span<const CareerYear> careers,
                                                  int parallelism) {
  // Author boundaries: [starts[i], starts[i + 1]).
  std::vector<size_t> starts;
  for (size_t i = 0; i < careers.size(); ++i) {
    if (i == 0 || careers[i].author_id != careers[i - 1].author_id) starts.push_back(i);
  }
  starts.push_back(careers.size());
  const size_t authors = starts.size() - 1;

  std::vector<AuthorMobility> out(authors);
  internal::ParallelChunks(authors, parallelism, [&](size_t, size_t begin, size_t end) {
    for (size_t a = begin; a < end; ++a) {
      auto years = careers.subspan(starts[a], starts[a + 1] - starts[a]);
      AuthorMobility& m = out[a];
      m.author_id = years.front().author_id;
      m.nationality = ComputeCareerNationality(years);
      for (const CareerYear& y : years) {
        if (auto loc = ComputeAnnualLocation(y)) m.locations.emplace_back(y.year, loc->country);
      }
      std::sort(m.locations.begin(), m.locations.end());
    }
  });
  return out;
}

std::vector<StockEntry> ComputeStocks(std::span<const AuthorMobility> authors, StockStats* stats) {
  std::map<std::pair<CountryCode, int>, StockEntry> table;
  for (const AuthorMobility& a : authors) {
    for (const auto& [year, country] : a.locations) {
      StockEntry& s = table[{country, year}];
      s.country = country;
      s.year = year;
      ++s.located_authors;
      if (!a.nationality) {
        ++s.no_nationality;
        if (stats) ++stats->located_without_nationality;
      } else if (a.nationality->country == country) {
        ++s.working_natives;
      } else {
        ++s.stock;
      }
    }
  }
  std::vector<StockEntry> out;
  out.reserve(table.size());
  for (auto& [key, entry] : table) out.push_back(entry);
  return out;
}

std::vector<AuthorMobility> GroupMobility(std::span<const AnnualLocation> locations,
                                          std::span<const CareerNationality> nationalities) {
  std::map<std::string, AuthorMobility> by_author;
  for (const AnnualLocation& l : locations) {
    AuthorMobility& m = by_author[l.author_id];
    m.author_id = l.author_id;
    m.locations.emplace_back(l.year, l.country);
  }
  for (const CareerNationality& n : nationalities) {
    AuthorMobility& m = by_author[n.author_id];
    m.author_id = n.author_id;
    m.nationality = n;
  }
  std::vector<AuthorMobility> out;
  for (auto& [id, m] : by_author) {
    std::sort(m.locations.begin(), m.locations.end());
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<StockEntry> ComputeStocks(std::span<const AnnualLocation> locations,
                                      std::span<const CareerNationality> nationalities,
                                      StockStats* stats) {
  return ComputeStocks(GroupMobility(locations, nationalities), stats);
}

std::vector<FlowEdge> ComputeFlows(std::span<const AuthorMobility> authors) {
  std::map<std::tuple<int, CountryCode, CountryCode>, FlowEdge> edges;
  std::vector<CountryCode> seen;
  for (const AuthorMobility& a : authors) {
    seen.clear();
    for (size_t i = 0; i < a.locations.size(); ++i) {
      const auto& [year, country] = a.locations[i];
      if (i > 0 && a.locations[i - 1].second != country) {
        CountryCode origin = a.locations[i - 1].second;
        FlowEdge& e = edges[{year, origin, country}];
        e.year = year;
        e.origin = origin;
        e.destination = country;
        ++e.weight;
        if (std::find(seen.begin(), seen.end(), country) != seen.end()) ++e.returners;
        if (a.nationality && a.nationality->country == origin) ++e.origin_natives;
        if (a.nationality && a.nationality->country == country) ++e.destination_natives;
      }
      if (std::find(seen.begin(), seen.end(), country) == seen.end()) seen.push_back(country);
    }
  }
  std::vector<FlowEdge> out;
  out.reserve(edges.size());
  for (auto& [key, edge] : edges) out.push_back(edge);
  return out;
}

std::vector<CountryFlowTotals> AggregateCountryFlows(std::span<const FlowEdge> flows) {
  std::map<std::pair<int, CountryCode>, CountryFlowTotals> totals;
  for (const FlowEdge& f : flows) {
    CountryFlowTotals& in = totals[{f.year, f.destination}];
    in.year = f.year;
    in.country = f.destination;
    in.total_in += f.weight;
    CountryFlowTotals& out = totals[{f.year, f.origin}];
    out.year = f.year;
    out.country = f.origin;
    out.total_out += f.weight;
  }
  std::vector<CountryFlowTotals> out;
  out.reserve(totals.size());
  for (auto& [key, t] : totals) out.push_back(t);
  return out;
}

// ---- JSON Lines -----------------------------------------------------------

using ordered_json = nlohmann::ordered_json;

std::string CareerToJson(std::span<const CareerYear> author_years) {
  ordered_json j;
  j["author_id"] = author_years.empty() ? "" : author_years.front().author_id;
  ordered_json years = ordered_json::object();
  for (const CareerYear& y : author_years) {
    ordered_json entries = ordered_json::array();
    for (const CareerEntry& e : y.entries) {
      ordered_json je;
      je["paper_id"] = e.paper_id;
      je["affiliation_id"] = e.affiliation_id ? ordered_json(*e.affiliation_id) : ordered_json();
      je["country_alpha2"] = e.country ? ordered_json(e.country->str()) : ordered_json();
      entries.push_back(std::move(je));
    }
    years[std::to_string(y.year)] = std::move(entries);
  }
  j["years"] = std::move(years);
  return j.dump();
}

std::vector<CareerYear> CareerFromJson(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad AuthorCareer line: ") + e.what());
  }
  std::vector<CareerYear> out;
  try {
    std::string author = j.at("author_id").get<std::string>();
    for (const auto& [year, entries] : j.at("years").items()) {
      CareerYear y;
      y.author_id = author;
      auto parsed = ParseInt(year);
      if (!parsed) throw InputError("bad year key '" + year + "' in AuthorCareer");
      y.year = static_cast<int>(*parsed);
      for (const auto& je : entries) {
        CareerEntry e;
        e.paper_id = je.at("paper_id").get<std::string>();
        if (!je.at("affiliation_id").is_null()) e.affiliation_id = je["affiliation_id"].get<std::string>();
        if (!je.at("country_alpha2").is_null()) {
          e.country = CountryCode::FromString(je["country_alpha2"].get<std::string>());
        }
        y.entries.push_back(std::move(e));
      }
      out.push_back(std::move(y));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad AuthorCareer line: ") + e.what());
  }
  std::sort(out.begin(), out.end(),
            [](const CareerYear& a, const CareerYear& b) { return a.year < b.year; });
  return out;
}

std::string MobilityToJson(const AuthorMobility& author) {
  ordered_json j;
  j["author_id"] = author.author_id;
  if (author.nationality) {
    j["career_nationality"] = author.nationality->country.str();
    j["nationality_year"] = author.nationality->established_year;
  } else {
    j["career_nationality"] = nullptr;
    j["nationality_year"] = nullptr;
  }
  ordered_json locations = ordered_json::object();
  for (const auto& [year, country] : author.locations) {
    locations[std::to_string(year)] = country.str();
  }
  j["locations"] = std::move(locations);
  return j.dump();
}

AuthorMobility MobilityFromJson(std::string_view line) {
  AuthorMobility m;
  try {
    ordered_json j = ordered_json::parse(line);
    m.author_id = j.at("author_id").get<std::string>();
    if (!j.at("career_nationality").is_null()) {
      m.nationality = CareerNationality{
          m.author_id, CountryCode::FromString(j["career_nationality"].get<std::string>()),
          j.at("nationality_year").get<int>()};
    }
    for (const auto& [year, country] : j.at("locations").items()) {
      auto parsed = ParseInt(year);
      if (!parsed) throw InputError("bad year key '" + year + "' in AuthorYearLocation");
      m.locations.emplace_back(static_cast<int>(*parsed),
                               CountryCode::FromString(country.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad AuthorYearLocation line: ") + e.what());
  }
  std::sort(m.locations.begin(), m.locations.end());
  return m;
}

}  // namespace kgenrich
