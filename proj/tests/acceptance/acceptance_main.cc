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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kgenrich/common.h"
#include "kgenrich/egonet.h"
#include "kgenrich/fos.h"
#include "kgenrich/gazetteer.h"
#include "kgenrich/hindex.h"
#include "kgenrich/ingest.h"
#include "kgenrich/mobility.h"
#include "kgenrich/pipeline.h"
#include "kgenrich/textproc.h"
#include "support/oracles.h"
#include "support/test_util.h"

namespace kgenrich {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string Fixed(double v, int digits = 2) { return FormatFixed(v, digits); }

// 1. Indexed reverse geocoding equals a linear scan.
Outcome GeocoderOracle() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  std::uniform_int_distribution<int64_t> pop(0, 5'000'000);
  Timer timer;
  std::vector<GazetteerEntry> entries;
  for (int i = 0; i < 10'000; ++i) {
    GazetteerEntry e;
    e.city_name = "City" + std::to_string(i);
    e.latitude = lat(rng);
    e.longitude = lon(rng);
    e.country_alpha2 = CountryCode::FromString("FR");
    e.population = pop(rng);
    entries.push_back(e);
  }
  Gazetteer gazetteer(entries);
  std::vector<oracle::Place> places;
  for (const auto& e : gazetteer.entries()) places.push_back({e.city_name, e.latitude, e.longitude, e.population});
  int mismatches = 0;
  for (int q = 0; q < 1000; ++q) {
    double a = lat(rng), b = lon(rng);
    auto hit = gazetteer.Nearest(a, b);
    size_t expected = oracle::NearestLinear(places, a, b);
    if (hit.entry != &gazetteer.entries()[expected]) ++mismatches;
  }
  double seconds = timer.Seconds();
  Outcome o;
  o.pass = mismatches == 0 && seconds < 10.0 && gazetteer.size() >= 10'000;
  o.detail = "gazetteer=" + std::to_string(gazetteer.size()) + " queries=1000 mismatches=" +
             std::to_string(mismatches) + " time=" + Fixed(seconds) + "s (limit 10s)";
  return o;
}

// 2. The three h-index algorithms agree; permutation and monotonicity hold.
Outcome HIndexAgreement() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<size_t> length(0, 200);
  std::uniform_int_distribution<int64_t> count(0, 1000);
  int disagreements = 0;
  for (int i = 0; i < 10'000; ++i) {
    std::vector<int64_t> c(length(rng));
    for (auto& x : c) x = count(rng);
    int64_t a = HIndexSorted(c), b = HIndexDefinition(c), d = HIndexCounting(c);
    if (a != b || b != d || a != oracle::HIndex(c)) ++disagreements;
  }
  int property_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<int64_t> c(length(rng));
    for (auto& x : c) x = count(rng);
    int64_t h = HIndexChecked(c);
    std::vector<int64_t> p = c;
    std::shuffle(p.begin(), p.end(), rng);
    if (HIndexChecked(p) != h) ++property_failures;
    std::vector<int64_t> appended = c;
    appended.push_back(count(rng));
    if (HIndexChecked(appended) < h) ++property_failures;
    if (!c.empty()) {
      std::vector<int64_t> bumped = c;
      bumped[rng() % c.size()] += 1 + count(rng) % 10;
      if (HIndexChecked(bumped) < h) ++property_failures;
    }
    if (h < 0 || h > static_cast<int64_t>(c.size())) ++property_failures;
  }
  Outcome o;
  o.pass = disagreements == 0 && property_failures == 0;
  o.detail = "arrays=10000 disagreements=" + std::to_string(disagreements) +
             " mutation_trials=1000 property_failures=" + std::to_string(property_failures);
  return o;
}

// 3. Mobility conservation on random careers.
Outcome MobilityConservation() {
  std::mt19937 rng(33);
  const char* countries[] = {"FR", "US", "IT", "DE", "ES", "PR"};
  AffiliationCountryMap geo;
  for (int f = 0; f < 30; ++f) {
    if (f % 7 != 6) geo["F" + std::to_string(f)] = CountryCode::FromString(countries[rng() % 6]);
  }
  std::vector<AuthorshipTriple> triples;
  int paper = 0;
  for (int a = 0; a < 500; ++a) {
    int year = 1980 + static_cast<int>(rng() % 30);
    int span = 1 + static_cast<int>(rng() % 12);
    for (int y = 0; y < span; ++y) {
      year += 1 + static_cast<int>(rng() % 3);
      int n = 1 + static_cast<int>(rng() % 5);
      for (int k = 0; k < n; ++k) {
        std::optional<std::string> aff;
        if (rng() % 8) aff = "F" + std::to_string(rng() % 30);
        triples.push_back({"P" + std::to_string(paper++), "A" + std::to_string(a), aff, year});
      }
    }
  }
  auto careers = BuildCareers(triples, geo);
  auto mobility = ComputeAuthorMobility(careers, 2);
  auto stocks = ComputeStocks(mobility);
  auto flows = ComputeFlows(mobility);
  auto totals = AggregateCountryFlows(flows);

  int violations = 0;
  std::map<int, int64_t> changes, weights, in, out;
  for (const auto& m : mobility) {
    for (size_t k = 1; k < m.locations.size(); ++k) {
      if (m.locations[k].second != m.locations[k - 1].second) ++changes[m.locations[k].first];
    }
  }
  for (const FlowEdge& f : flows) {
    weights[f.year] += f.weight;
    if (f.origin == f.destination || f.returners > f.weight || f.origin_natives > f.weight ||
        f.destination_natives > f.weight) {
      ++violations;
    }
  }
  if (weights != changes) ++violations;
  for (const auto& t : totals) {
    in[t.year] += t.total_in;
    out[t.year] += t.total_out;
  }
  if (in != weights || out != weights) ++violations;
  for (const StockEntry& s : stocks) {
    if (s.stock + s.working_natives + s.no_nationality != s.located_authors) ++violations;
    if (s.stock > s.located_authors) ++violations;
  }
  int64_t movements = 0;
  for (const auto& [y, w] : weights) movements += w;
  Outcome o;
  o.pass = violations == 0 && mobility.size() == 500;
  o.detail = "careers=" + std::to_string(mobility.size()) + " movements=" + std::to_string(movements) +
             " stock_rows=" + std::to_string(stocks.size()) + " violations=" + std::to_string(violations);
  return o;
}

// 4. Ego networks equal pairwise enumeration.
Outcome EgoNetworkOracle() {
  std::mt19937 rng(44);
  int mismatches = 0, corpora = 0;
  for (int trial = 0; trial < 60; ++trial, ++corpora) {
    size_t n = 1 + rng() % 1000;
    int papers = 1 + static_cast<int>(rng() % 300);
    int authors = 1 + static_cast<int>(rng() % 150);
    std::vector<int> year(static_cast<size_t>(papers));
    for (int& y : year) y = 2000 + static_cast<int>(rng() % 5);
    std::vector<AuthorshipTriple> triples;
    std::vector<oracle::Authorship> rows;
    for (size_t i = 0; i < n; ++i) {
      size_t p = rng() % static_cast<size_t>(papers);
      std::string paper = "P" + std::to_string(p);
      std::string author = "a" + std::to_string(rng() % static_cast<uint32_t>(authors));
      triples.push_back({paper, author, std::nullopt, year[p]});
      rows.push_back({paper, author, year[p]});
    }
    EgoNetOptions options;
    options.parallelism = 1 + trial % 3;
    auto nets = BuildEgoNetworks(triples, options);
    auto expected = oracle::EgoNetworks(rows, options.max_authors_per_paper);
    if (nets.size() != expected.size()) ++mismatches;
    std::map<std::pair<std::string, int>, const EgoNetwork*> index;
    for (const auto& net : nets) {
      index[{net.ego, net.year}] = &net;
      auto it = expected.find({net.ego, net.year});
      if (it == expected.end() || it->second != net.alters) ++mismatches;
    }
    std::map<int, int64_t> sum, handshake;
    for (const auto& net : nets) {
      for (const auto& [alter, w] : net.alters) {
        sum[net.year] += w;
        auto back = index.find({alter, net.year});
        if (back == index.end() || back->second->alters.count(net.ego) == 0 ||
            back->second->alters.at(net.ego) != w) {
          ++mismatches;
        }
      }
    }
    std::map<std::string, std::set<std::string>> by_paper;
    for (const auto& r : rows) by_paper[r.paper].insert(r.author);
    for (const auto& [paper, as] : by_paper) {
      int64_t k = static_cast<int64_t>(as.size());
      if (k >= 2) handshake[year[std::stoul(paper.substr(1))]] += k * (k - 1);
    }
    if (sum != handshake) ++mismatches;
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = "corpora=" + std::to_string(corpora) + " (<=1000 triples each) mismatches=" + std::to_string(mismatches);
  return o;
}

// 5. Field-of-study normalization.
Outcome FosNormalization() {
  std::mt19937 rng(55);
  int failures = 0;
  int64_t maps = 0;
  auto make = [&](int n, bool tree, std::vector<FosRecord>* nodes, std::vector<FosChildLink>* links) {
    std::vector<std::vector<std::string>> by_level(6);
    for (int i = 0; i < n; ++i) {
      int level = i < 19 ? 0 : static_cast<int>(rng() % 6);
      std::string id = std::to_string(1000 + i);
      nodes->push_back({id, id, level});
      by_level[static_cast<size_t>(level)].push_back(id);
    }
    for (const FosRecord& node : *nodes) {
      if (node.level == 0) continue;
      int parents = tree ? 1 : 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < parents; ++k) {
        const auto& pool = by_level[rng() % static_cast<uint32_t>(node.level)];
        if (!pool.empty()) links->push_back({pool[rng() % pool.size()], node.fos_id});
      }
    }
  };
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<FosRecord> nodes;
    std::vector<FosChildLink> links;
    make(trial == 0 ? 5000 : 20 + static_cast<int>(rng() % 4980), false, &nodes, &links);
    FosDag dag(nodes, links);
    for (const FosLabeling& l : PropagateLabels(dag, 1 + trial % 4)) {
      if (l.scores.empty()) continue;
      ++maps;
      double sum = 0;
      for (const auto& [area, s] : l.scores) sum += s;
      if (std::fabs(sum - 1.0) > 1e-9) ++failures;
    }
  }
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<FosRecord> nodes;
    std::vector<FosChildLink> links;
    make(3000, true, &nodes, &links);
    FosDag dag(nodes, links);
    std::map<std::string, std::string> parent;
    for (const auto& l : links) parent[l.child_id] = l.parent_id;
    for (const FosLabeling& l : PropagateLabels(dag)) {
      std::string root = l.fos_id;
      while (parent.count(root)) root = parent[root];
      bool rooted = dag.Find(root)->level == 0;
      if (rooted && l.scores != AreaScores{{root, 1.0}}) ++failures;
      if (!rooted && !l.scores.empty()) ++failures;
    }
  }
  std::vector<FosRecord> worked = {{"A", "A", 0}, {"B", "B", 0}, {"C", "C", 1}, {"D", "D", 1}, {"E", "E", 2}};
  std::vector<FosChildLink> worked_links = {{"A", "C"}, {"B", "C"}, {"A", "D"}, {"C", "E"}, {"D", "E"}};
  std::map<std::string, AreaScores> labels;
  for (auto& l : PropagateLabels(FosDag(worked, worked_links))) labels[l.fos_id] = l.scores;
  bool example = labels["E"] == AreaScores{{"A", 0.75}, {"B", 0.25}} && labels["A"] == AreaScores{{"A", 1.0}};
  std::vector<FosLabeling> paper_labels = {{"D", labels["D"]}, {"C", labels["C"]}};
  std::vector<PaperFosLink> paper_links = {{"P1", "D", std::nullopt}, {"P1", "C", std::nullopt}};
  example &= ScorePapers(paper_links, paper_labels).at(0).scores == AreaScores{{"A", 0.75}, {"B", 0.25}};
  Outcome o;
  o.pass = failures == 0 && example;
  o.detail = "score_maps=" + std::to_string(maps) + " failures=" + std::to_string(failures) +
             " worked_example=" + (example ? "exact" : "wrong");
  return o;
}

const std::vector<std::string> kGoldenOutputs = {
    outputs::kAffiliationsGeo, outputs::kAuthorCareer, outputs::kAuthorYearLocation, outputs::kStocks,
    outputs::kFlows,           outputs::kCountryFlows, outputs::kEgoNetworks,        outputs::kHIndex,
    outputs::kAbstracts,       outputs::kFosLabeled,   outputs::kPaperAreas};

// 6. End-to-end golden fixture.
Outcome GoldenFixture() {
  testing::TempDir dir;
  PipelineConfig config;
  config.output_dir = dir.path();
  Timer timer;
  Pipeline pipeline(Manifest::Load(testing::TestDataDir() / "fixture" / "manifest.txt"), config);
  pipeline.Run("all");
  double seconds = timer.Seconds();
  int differing = 0;
  std::string names;
  for (const std::string& name : kGoldenOutputs) {
    fs::path got = dir / name;
    if (!fs::exists(got) ||
        testing::ReadFile(got) != testing::ReadFile(testing::TestDataDir() / "golden" / name)) {
      ++differing;
      names += " " + name;
    }
  }
  bool dual = testing::ReadFile(dir / outputs::kAffiliationsGeo).find(",PR,US,PRI,") != std::string::npos;
  Outcome o;
  o.pass = differing == 0 && seconds < 1.0 && dual;
  o.detail = "files=" + std::to_string(kGoldenOutputs.size()) + " differing=" + std::to_string(differing) + names +
             " pr_dual_coded=" + (dual ? "yes" : "no") + " time=" + Fixed(seconds, 3) + "s (limit 1s)";
  return o;
}

int64_t PeakRssBytes() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<int64_t>(usage.ru_maxrss) * 1024;
}

// 7. One million triples through build-careers .. flows.
Outcome Throughput() {
  testing::TempDir dir;
  std::mt19937_64 rng(77);
  const int kPapers = 300'000, kAuthors = 200'000, kAffiliations = 3'000, kTriples = 1'000'000;
  {
    std::ofstream gaz(dir / "gazetteer.csv");
    gaz << "name,alt_names,latitude,longitude,country_alpha2,admin1,population\n";
    const char* cc[] = {"FR", "US", "IT", "DE", "ES", "GB", "CA", "JP", "BR", "CN"};
    std::uniform_real_distribution<double> lat(-60, 70), lon(-180, 180);
    for (int i = 0; i < 2000; ++i) {
      gaz << "City" << i << ",," << lat(rng) << ',' << lon(rng) << ',' << cc[i % 10] << ",," << i << '\n';
    }
    std::ofstream affs(dir / "affiliations.tsv");
    for (int i = 0; i < kAffiliations; ++i) {
      affs << 'F' << i << "\tInstitute " << i << '\t';
      if (i % 10) affs << lat(rng) << '\t' << lon(rng);
      else affs << '\t';
      affs << "\t\n";
    }
    std::ofstream papers(dir / "papers.tsv");
    for (int i = 0; i < kPapers; ++i) {
      papers << 'P' << i << "\tJournal\t" << 1980 + static_cast<int>(rng() % 40) << "\t" << rng() % 50 << "\t0\t\n";
    }
    std::ofstream triples(dir / "paper_author_affiliations.tsv");
    for (int i = 0; i < kTriples; ++i) {
      triples << 'P' << rng() % kPapers << "\tA" << rng() % kAuthors << '\t';
      if (rng() % 10) triples << 'F' << rng() % kAffiliations;
      triples << '\n';
    }
    std::ofstream manifest(dir / "manifest.txt");
    manifest << "papers = papers.tsv\naffiliations = affiliations.tsv\n"
                "paper_author_affiliations = paper_author_affiliations.tsv\ngazetteer = gazetteer.csv\n";
  }
  PipelineConfig config;
  config.output_dir = dir / "out";
  config.memory_budget_bytes = size_t{2} << 30;
  Pipeline pipeline(Manifest::Load(dir / "manifest.txt"), config);
  pipeline.Run("geocode-affiliations");
  Timer timer;
  RunReport careers = pipeline.Run("build-careers");
  pipeline.Run("annual-locations");
  pipeline.Run("stocks");
  RunReport flows = pipeline.Run("flows");
  double seconds = timer.Seconds();
  int64_t rss = PeakRssBytes();
  const StreamCounts& join = careers.streams.at("join");
  Outcome o;
  o.pass = seconds < 60.0 && rss < (int64_t{2} << 30) && join.in == kTriples && careers.Violations().empty() &&
           flows.Violations().empty();
  o.detail = "triples=" + std::to_string(join.in) + " joined=" + std::to_string(join.out) + " time=" +
             Fixed(seconds) + "s (limit 60s) peak_rss=" + std::to_string(rss >> 20) + "MB (limit 2048MB)";
  return o;
}

// 8. Language identification accuracy on the labeled sample.
Outcome LanguageAccuracy() {
  LanguageDetector detector;
  std::ifstream in(testing::TestDataDir() / "lang_sample.tsv");
  std::map<std::string, std::pair<int, int>> per_language;
  int total = 0, correct = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    std::string lang = line.substr(0, tab);
    std::string text = line.substr(tab + 1);
    bool ok = detector.Detect(text) == lang;
    ++total;
    correct += ok;
    per_language[lang].first += ok;
    per_language[lang].second += 1;
  }
  bool counts_ok = per_language.size() == 7;
  for (const auto& [lang, c] : per_language) counts_ok &= c.second == 100;
  bool und = true;
  for (std::string s : {"", " ", "\n\t", "Hi.", "Short note.", "ok ok ok", "12345 67890", "¿Qué?", "Guten Tag!"}) {
    und &= detector.Detect(s) == "und";
  }
  double accuracy = total ? static_cast<double>(correct) / total : 0.0;
  Outcome o;
  o.pass = counts_ok && accuracy >= 0.95 && und;
  std::string langs;
  for (const auto& [lang, c] : per_language) langs += " " + lang + "=" + std::to_string(c.first) + "/" + std::to_string(c.second);
  o.detail = "accuracy=" + Fixed(accuracy * 100, 1) + "% (limit 95%)" + langs + " short_inputs_und=" + (und ? "yes" : "no");
  return o;
}

}  // namespace
}  // namespace kgenrich

int main() {
  using kgenrich::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"geocoder oracle equivalence", kgenrich::GeocoderOracle},
      {"h-index triple agreement", kgenrich::HIndexAgreement},
      {"mobility conservation", kgenrich::MobilityConservation},
      {"ego-network oracle", kgenrich::EgoNetworkOracle},
      {"fos normalization", kgenrich::FosNormalization},
      {"golden fixture", kgenrich::GoldenFixture},
      {"throughput", kgenrich::Throughput},
      {"language detection", kgenrich::LanguageAccuracy},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
