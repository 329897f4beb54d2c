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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kgenrich/common.h"
#include "kgenrich/country.h"
#include "kgenrich/egonet.h"
#include "kgenrich/fos.h"
#include "kgenrich/gazetteer.h"
#include "kgenrich/hindex.h"
#include "kgenrich/infobox.h"
#include "kgenrich/mobility.h"
#include "kgenrich/pipeline.h"
#include "kgenrich/textproc.h"

namespace py = pybind11;

namespace kgenrich {
namespace {

using Triple = std::tuple<std::string, std::string, std::optional<std::string>, int>;

std::vector<AuthorshipTriple> ToTriples(const std::vector<Triple>& rows) {
  std::vector<AuthorshipTriple> out;
  out.reserve(rows.size());
  for (const auto& [paper, author, affiliation, year] : rows) {
    out.push_back({paper, author, affiliation, year});
  }
  return out;
}

py::dict MobilityDict(const AuthorMobility& m) {
  py::dict d;
  d["author_id"] = m.author_id;
  if (m.nationality) {
    d["nationality"] = m.nationality->country.str();
    d["nationality_year"] = m.nationality->established_year;
  } else {
    d["nationality"] = py::none();
    d["nationality_year"] = py::none();
  }
  std::map<int, std::string> locations;
  for (const auto& [year, country] : m.locations) locations[year] = country.str();
  d["locations"] = locations;
  return d;
}

std::vector<AuthorMobility> Mobility(const std::vector<Triple>& triples,
                                     const std::map<std::string, std::string>& affiliation_country,
                                     int parallelism) {
  AffiliationCountryMap geo;
  for (const auto& [aff, country] : affiliation_country) geo.emplace(aff, CountryCode::FromString(country));
  std::vector<CareerYear> careers = BuildCareers(ToTriples(triples), geo);
  return ComputeAuthorMobility(careers, parallelism);
}

}  // namespace
}  // namespace kgenrich

PYBIND11_MODULE(_core, m) {
  using namespace kgenrich;
  m.doc() = "Enrichment operations for academic knowledge-graph dumps";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  // h-index
  m.def("h_index_sorted", [](const std::vector<int64_t>& c) { return HIndexSorted(c); }, py::arg("citations"));
  m.def("h_index_definition", [](const std::vector<int64_t>& c) { return HIndexDefinition(c); },
        py::arg("citations"));
  m.def("h_index_counting", [](const std::vector<int64_t>& c) { return HIndexCounting(c); }, py::arg("citations"));
  m.def("h_index", [](const std::vector<int64_t>& c) { return HIndexChecked(c); }, py::arg("citations"),
        "h-index cross-checked across the three algorithms.");

  // text
  m.def("clean_markup", &CleanMarkup, py::arg("text"));
  m.def("decode_html_entities", &DecodeHtmlEntities, py::arg("text"));
  m.def(
      "tokenize",
      [](std::string_view text) {
        TokenCounts c = Tokenize(text);
        return std::make_pair(c.tokens, c.types);
      },
      py::arg("text"), "Returns (token -> count, sorted types).");

  py::class_<LanguageDetector>(m, "LanguageDetector")
      .def(py::init([](std::vector<std::string> languages, size_t profile_size, size_t min_chars,
                       double max_normalized_distance) {
             LanguageDetectorOptions o;
             if (!languages.empty()) o.languages = std::move(languages);
             o.profile_size = profile_size;
             o.min_chars = min_chars;
             o.max_normalized_distance = max_normalized_distance;
             return std::make_unique<LanguageDetector>(o);
           }),
           py::arg("languages") = std::vector<std::string>{}, py::arg("profile_size") = 300,
           py::arg("min_chars") = 20, py::arg("max_normalized_distance") = 0.85)
      .def("detect", &LanguageDetector::Detect, py::arg("text"))
      .def("distances", &LanguageDetector::Distances, py::arg("text"))
      .def_static("bundled_languages", &LanguageDetector::BundledLanguages);

  m.def(
      "process_abstract",
      [](std::string paper_id, std::string_view text) {
        static const LanguageDetector detector;
        AbstractRecord r = ProcessAbstract(std::move(paper_id), text, detector);
        py::dict d;
        d["paper_id"] = r.paper_id;
        d["language"] = r.language;
        d["text"] = r.text;
        d["tokens"] = r.counts.tokens;
        d["types"] = r.counts.types;
        return d;
      },
      py::arg("paper_id"), py::arg("text"));

  // geography
  py::class_<Gazetteer>(m, "Gazetteer")
      .def(py::init([](const std::vector<std::tuple<std::string, double, double, std::string, std::string,
                                                    int64_t>>& rows) {
             std::vector<GazetteerEntry> entries;
             for (const auto& [name, lat, lon, country, admin1, population] : rows) {
               GazetteerEntry e;
               e.city_name = name;
               e.latitude = lat;
               e.longitude = lon;
               e.country_alpha2 = CountryCode::FromString(country);
               e.admin1 = admin1;
               e.population = population;
               entries.push_back(std::move(e));
             }
             return std::make_unique<Gazetteer>(std::move(entries));
           }),
           py::arg("rows"), "rows: (name, latitude, longitude, country_alpha2, admin1, population)")
      .def_static("load", [](const std::filesystem::path& p) { return Gazetteer::Load(p); }, py::arg("path"))
      .def(
          "nearest",
          [](const Gazetteer& g, double lat, double lon) {
            Gazetteer::Hit hit = g.Nearest(lat, lon);
            return py::make_tuple(hit.entry->city_name, hit.entry->country_alpha2.str(), hit.distance_km,
                                  static_cast<size_t>(hit.entry - g.entries().data()));
          },
          py::arg("latitude"), py::arg("longitude"),
          "Returns (city, country_alpha2, distance_km, row_index).")
      .def("__len__", &Gazetteer::size);

  m.def("haversine_km", &HaversineKm, py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"));
  m.def(
      "normalize_country",
      [](std::string_view raw, double min_similarity) -> std::optional<std::string> {
        auto match = NormalizeCountry(raw, CountryTable::Bundled(), {min_similarity});
        if (!match) return std::nullopt;
        return match->record->alpha2.str();
      },
      py::arg("raw"), py::arg("min_similarity") = 0.85);
  m.def(
      "secondary_country",
      [](const std::string& alpha2) -> std::optional<std::string> {
        auto parent = SecondaryCountry(CountryCode::FromString(alpha2));
        if (!parent) return std::nullopt;
        return parent->str();
      },
      py::arg("alpha2"));
  m.def(
      "infobox_fields",
      [](std::string_view wikitext) {
        InfoboxFields f = ExtractFields(ParseInfobox(wikitext));
        py::dict d;
        d["city"] = f.city;
        d["state"] = f.state;
        d["country"] = f.country;
        d["acronym"] = f.acronym;
        d["foundation_date"] = f.foundation_date;
        d["homepage"] = f.homepage;
        d["entity_type"] = f.entity_type;
        d["multi_location"] = f.multi_location;
        return d;
      },
      py::arg("wikitext"));

  // mobility
  m.def(
      "author_mobility",
      [](const std::vector<Triple>& triples, const std::map<std::string, std::string>& geo, int parallelism) {
        py::list out;
        for (const AuthorMobility& a : Mobility(triples, geo, parallelism)) out.append(MobilityDict(a));
        return out;
      },
      py::arg("triples"), py::arg("affiliation_country"), py::arg("parallelism") = 1,
      "triples: (paper_id, author_id, affiliation_id or None, year)");
  m.def(
      "stocks",
      [](const std::vector<Triple>& triples, const std::map<std::string, std::string>& geo) {
        std::vector<std::tuple<std::string, int, int64_t, int64_t, int64_t, int64_t>> out;
        for (const StockEntry& s : ComputeStocks(Mobility(triples, geo, 1))) {
          out.emplace_back(s.country.str(), s.year, s.stock, s.located_authors, s.working_natives,
                           s.no_nationality);
        }
        return out;
      },
      py::arg("triples"), py::arg("affiliation_country"),
      "Rows of (country, year, stock, located_authors, working_natives, no_nationality).");
  m.def(
      "flows",
      [](const std::vector<Triple>& triples, const std::map<std::string, std::string>& geo) {
        std::vector<std::tuple<int, std::string, std::string, int64_t, int64_t, int64_t, int64_t>> out;
        for (const FlowEdge& f : ComputeFlows(Mobility(triples, geo, 1))) {
          out.emplace_back(f.year, f.origin.str(), f.destination.str(), f.weight, f.returners,
                           f.origin_natives, f.destination_natives);
        }
        return out;
      },
      py::arg("triples"), py::arg("affiliation_country"),
      "Rows of (year, origin, destination, weight, returners, origin_natives, destination_natives).");

  // networks
  m.def(
      "ego_networks",
      [](const std::vector<Triple>& triples, size_t max_authors_per_paper) {
        EgoNetOptions o;
        o.max_authors_per_paper = max_authors_per_paper;
        std::vector<std::tuple<std::string, int, std::map<std::string, int64_t>>> out;
        for (EgoNetwork& n : BuildEgoNetworks(ToTriples(triples), o)) {
          out.emplace_back(std::move(n.ego), n.year, std::move(n.alters));
        }
        return out;
      },
      py::arg("triples"), py::arg("max_authors_per_paper") = 500,
      "Rows of (ego, year, {alter: weight}).");

  // fields of study
  m.def(
      "propagate_labels",
      [](const std::vector<std::tuple<std::string, int>>& nodes,
         const std::vector<std::pair<std::string, std::string>>& links) {
        std::vector<FosRecord> records;
        for (const auto& [id, level] : nodes) records.push_back({id, id, level});
        std::vector<FosChildLink> edges;
        for (const auto& [parent, child] : links) edges.push_back({parent, child});
        FosDag dag(std::move(records), edges);
        std::map<std::string, AreaScores> out;
        for (FosLabeling& l : PropagateLabels(dag)) out.emplace(std::move(l.fos_id), std::move(l.scores));
        return out;
      },
      py::arg("nodes"), py::arg("links"), "nodes: (fos_id, level); links: (parent_id, child_id).");
  m.def(
      "score_papers",
      [](const std::vector<std::pair<std::string, std::string>>& links,
         const std::map<std::string, AreaScores>& labels) {
        std::vector<PaperFosLink> l;
        for (const auto& [paper, fos] : links) l.push_back({paper, fos, std::nullopt});
        std::vector<FosLabeling> labelings;
        for (const auto& [fos, scores] : labels) labelings.push_back({fos, scores});
        std::map<std::string, AreaScores> out;
        for (PaperAreaScores& p : ScorePapers(l, labelings)) out.emplace(std::move(p.paper_id), std::move(p.scores));
        return out;
      },
      py::arg("links"), py::arg("labels"));

  // pipeline
  m.def(
      "run",
      [](const std::string& subcommand, const std::filesystem::path& manifest,
         const std::filesystem::path& output_dir, int parallelism, bool skip_malformed) {
        PipelineConfig config;
        config.output_dir = output_dir;
        config.parallelism = parallelism;
        config.malformed = skip_malformed ? MalformedPolicy::kSkip : MalformedPolicy::kReport;
        Pipeline pipeline(Manifest::Load(manifest), config);
        RunReport report;
        {
          py::gil_scoped_release release;
          report = pipeline.Run(subcommand);
        }
        return report.ToJson();
      },
      py::arg("subcommand"), py::arg("manifest"), py::arg("output_dir"), py::arg("parallelism") = 1,
      py::arg("skip_malformed") = false, "Runs a pipeline stage and returns its report as JSON text.");
  m.attr("STAGES") = Pipeline::Stages();
}
