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

#include "kgenrich/pipeline.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <set>
#include <unordered_map>

#include "kgenrich/country.h"
#include "kgenrich/egonet.h"
#include "kgenrich/fos.h"
#include "kgenrich/gazetteer.h"
#include "kgenrich/geocode.h"
#include "kgenrich/hindex.h"
#include "kgenrich/join.h"
#include "kgenrich/mobility.h"
#include "kgenrich/textproc.h"
#include "parallel.h"

namespace kgenrich {

namespace fs = std::filesystem;

namespace {

constexpr size_t kAbstractBatch = 4096;

// Writes to `<path>.tmp` and renames over `path` on Commit().
class StagedFile {
 public:
  explicit StagedFile(fs::path path) : path_(std::move(path)), tmp_(path_.string() + ".tmp") {}
  ~StagedFile() {
    std::error_code ec;
    if (!committed_) fs::remove(tmp_, ec);
  }
  const fs::path& tmp() const { return tmp_; }
  void Commit() {
    std::error_code ec;
    fs::rename(tmp_, path_, ec);
    if (ec) throw InputError("cannot move " + tmp_.string() + " to " + path_.string() + ": " + ec.message());
    committed_ = true;
  }

 private:
  fs::path path_;
  fs::path tmp_;
  bool committed_ = false;
};

std::string Str(int64_t v) { return std::to_string(v); }

StreamCounts Counts(int64_t in, int64_t out, int64_t rejects) {
  StreamCounts c;
  c.in = in;
  c.out = out;
  c.rejects = rejects;
  return c;
}

std::string TripleRaw(const AuthorshipTriple& t) {
  return t.paper_id + "\t" + t.author_id + "\t" + t.affiliation_id.value_or("");
}

std::vector<AuthorMobility> ReadMobility(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<AuthorMobility> out;
  std::string line;
  while (std::getline(in, line)) {
    if (TrimView(line).empty()) continue;
    out.push_back(MobilityFromJson(line));
  }
  return out;
}

}  // namespace

Pipeline::Pipeline(Manifest manifest, PipelineConfig config)
    : manifest_(std::move(manifest)), config_(std::move(config)) {
  if (config_.parallelism < 1) throw InputError("parallelism must be at least 1");
  if (config_.output_dir.empty()) throw InputError("no output directory given");
  std::error_code ec;
  fs::create_directories(config_.output_dir, ec);
  if (ec || !fs::is_directory(config_.output_dir)) {
    throw InputError("cannot create output directory " + config_.output_dir.string());
  }
}

const std::vector<std::string>& Pipeline::Stages() {
  static const std::vector<std::string> kStages = {
      "geocode-affiliations", "build-careers", "annual-locations", "stocks",
      "flows",                "egonets",       "hindex",           "abstracts",
      "fos-propagate",        "paper-areas"};
  return kStages;
}

std::vector<std::string> Pipeline::RequiredSubsets(std::string_view stage) {
  if (stage == "geocode-affiliations") return {"affiliations", "gazetteer"};
  if (stage == "build-careers" || stage == "egonets" || stage == "hindex") {
    return {"papers", "paper_author_affiliations"};
  }
  if (stage == "abstracts") return {"abstracts"};
  if (stage == "fos-propagate") return {"fields_of_study"};
  if (stage == "paper-areas") return {"paper_fos"};
  return {};
}

fs::path Pipeline::Output(std::string_view name) const { return config_.output_dir / name; }

fs::path Pipeline::Require(std::string_view name, std::string_view stage,
                           std::string_view producer) const {
  fs::path path = Output(name);
  if (!fs::exists(path)) {
    throw InputError(std::string(stage) + " needs " + std::string(name) + " in " +
                     config_.output_dir.string() + "; run `" + std::string(producer) + "` first");
  }
  return path;
}

void Pipeline::Warn(const std::string& message) const {
  if (config_.log) *config_.log << "warning: " << message << '\n';
}

template <typename Record>
std::vector<Record> Pipeline::ReadSubset(std::string_view subset, RunReport* report) {
  RejectLog rejects(config_.output_dir, std::string(subset));
  RecordStream<Record> stream(manifest_.Get(subset), &rejects, config_.malformed);
  std::vector<Record> out = stream.ReadAll();
  report->AddStream(std::string(subset), stream.counts());
  if (stream.counts().malformed > 0 && config_.malformed == MalformedPolicy::kReport) {
    Warn(Str(stream.counts().malformed) + " malformed record(s) in " + std::string(subset) +
         "; see " + rejects.path().string());
  }
  if (stream.counts().invalid_utf8 > 0) {
    Warn(Str(stream.counts().invalid_utf8) + " invalid UTF-8 sequence(s) replaced in " +
         std::string(subset));
  }
  return out;
}

RunReport Pipeline::Run(std::string_view subcommand) {
  auto start = std::chrono::steady_clock::now();
  RunReport report = Dispatch(subcommand);
  report.subcommand = std::string(subcommand);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto violations = report.Violations();
  if (!violations.empty()) {
    throw ConsistencyError("stream accounting violated in " + report.subcommand + ": " + violations[0]);
  }
  report.Write(Output(std::string(subcommand) + ".report.json"));
  return report;
}

RunReport Pipeline::Dispatch(std::string_view stage) {
  if (stage == "all") return All();
  if (stage == "geocode-affiliations") return GeocodeAffiliations();
  if (stage == "build-careers") return BuildCareerStage();
  if (stage == "annual-locations") return AnnualLocations();
  if (stage == "stocks") return Stocks();
  if (stage == "flows") return Flows();
  if (stage == "egonets") return EgoNetworks();
  if (stage == "hindex") return HIndex();
  if (stage == "abstracts") return Abstracts();
  if (stage == "fos-propagate") return FosPropagate();
  if (stage == "paper-areas") return PaperAreas();
  throw InputError("unknown subcommand '" + std::string(stage) + "'");
}

RunReport Pipeline::All() {
  RunReport report;
  std::set<std::string> skipped;
  const std::map<std::string, std::string> prerequisite = {
      {"build-careers", "geocode-affiliations"}, {"annual-locations", "build-careers"},
      {"stocks", "annual-locations"},           {"flows", "annual-locations"},
      {"paper-areas", "fos-propagate"}};
  for (const std::string& stage : Stages()) {
    std::string reason;
    for (const std::string& subset : RequiredSubsets(stage)) {
      if (!manifest_.Has(subset)) {
        reason = "manifest has no " + subset;
        break;
      }
    }
    auto pre = prerequisite.find(stage);
    if (reason.empty() && pre != prerequisite.end() && skipped.count(pre->second)) {
      reason = pre->second + " was skipped";
    }
    if (!reason.empty()) {
      skipped.insert(stage);
      report.skipped_stages.push_back(stage + " (" + reason + ")");
      Warn("skipping " + stage + ": " + reason);
      continue;
    }
    report.Absorb(Run(stage));
  }
  return report;
}

RunReport Pipeline::GeocodeAffiliations() {
  RunReport report;
  std::optional<CountryTable> own_countries;
  const CountryTable* countries = &CountryTable::Bundled();
  if (manifest_.Has("countries")) {
    const SubsetSource& src = manifest_.Get("countries");
    DelimitedReader reader(src.path, src.format);
    own_countries = CountryTable::Read(reader);
    countries = &*own_countries;
  }
  std::optional<TerritoryTable> own_territories;
  const TerritoryTable* territories = &TerritoryTable::Bundled();
  if (manifest_.Has("territories")) {
    const SubsetSource& src = manifest_.Get("territories");
    DelimitedReader reader(src.path, src.format);
    own_territories = TerritoryTable::Read(reader);
    territories = &*own_territories;
  }
  const SubsetSource& gsrc = manifest_.Get("gazetteer");
  DelimitedReader greader(gsrc.path, gsrc.format);
  Gazetteer gazetteer = Gazetteer::Read(greader, countries);
  report.Count("gazetteer_entries", static_cast<int64_t>(gazetteer.size()));

  InfoboxStore infoboxes;
  if (manifest_.Has("infobox")) {
    for (InfoboxDocument& doc : ReadSubset<InfoboxDocument>("infobox", &report)) {
      infoboxes.Add(std::move(doc.affiliation_id), std::move(doc.wikitext));
    }
  }

  std::vector<AffiliationRecord> affiliations = ReadSubset<AffiliationRecord>("affiliations", &report);
  EnrichOptions options;
  options.max_distance_km = config_.max_distance_km;
  options.country.min_similarity = config_.country_min_similarity;
  EnrichStats stats;
  std::vector<GeoEnrichment> enriched =
      EnrichAffiliations(affiliations, gazetteer, *countries, *territories,
                         manifest_.Has("infobox") ? &infoboxes : nullptr, options, &stats);

  StagedFile file(Output(outputs::kAffiliationsGeo));
  CsvWriter writer(file.tmp(), GeoEnrichmentColumns());
  for (const GeoEnrichment& g : enriched) writer.Write(ToCsvRow(g));
  writer.Close();
  file.Commit();
  report.outputs.push_back(outputs::kAffiliationsGeo);

  report.Count("affiliations", stats.affiliations);
  report.Count("reverse_located", stats.reverse_located);
  report.Count("beyond_max_distance", stats.beyond_max_distance);
  report.Count("with_infobox", stats.with_infobox);
  report.Count("url_located", stats.url_located);
  report.Count("merged", stats.merged);
  report.Count("unlocated", stats.unlocated);
  report.Count("multi_location", stats.multi_location);
  report.Count("secondary_country", stats.secondary_country);
  report.Count("postcode_conflicts", stats.merge.postcode_conflicts);
  report.Count("country_conflicts", stats.merge.country_conflicts);
  return report;
}

namespace {

// Joins authorship rows with paper years, collecting the result.
std::vector<AuthorshipTriple> JoinedTriples(const Manifest& manifest, const PipelineConfig& config,
                                            std::string_view stage, RunReport* report,
                                            const std::function<void(const std::string&)>& warn) {
  RejectLog paper_rejects(config.output_dir, "papers");
  RejectLog triple_rejects(config.output_dir, "paper_author_affiliations");
  RejectLog join_rejects(config.output_dir, "paper_author_affiliations." + std::string(stage));
  RecordStream<PaperRecord> papers(manifest.Get("papers"), &paper_rejects, config.malformed);
  RecordStream<AuthorshipTriple> triples(manifest.Get("paper_author_affiliations"), &triple_rejects,
                                         config.malformed);
  JoinOptions options;
  options.memory_budget_bytes = config.memory_budget_bytes;
  options.spill_dir = config.output_dir;

  std::vector<AuthorshipTriple> out;
  JoinStats stats = JoinTriplesWithYears(
      [&] { return papers.Next(); }, [&] { return triples.Next(); }, options,
      [&](AuthorshipTriple&& t) { out.push_back(std::move(t)); },
      [&](const AuthorshipTriple& t, std::string_view reason) {
        join_rejects.Record(0, reason, TripleRaw(t));
      });

  report->AddStream("papers", papers.counts());
  report->AddStream("paper_author_affiliations", triples.counts());
  report->AddStream("join", Counts(stats.input, stats.output, stats.rejected));
  report->Count("duplicate_papers", stats.duplicate_papers);
  report->Count("join_spilled", stats.spilled ? 1 : 0);
  if (config.malformed == MalformedPolicy::kReport) {
    if (papers.counts().malformed > 0) {
      warn(Str(papers.counts().malformed) + " malformed record(s) in papers; see " +
           paper_rejects.path().string());
    }
    if (triples.counts().malformed > 0) {
      warn(Str(triples.counts().malformed) + " malformed record(s) in paper_author_affiliations; see " +
           triple_rejects.path().string());
    }
  }
  if (stats.rejected > 0) {
    warn(Str(stats.rejected) + " authorship row(s) without a dated paper; see " +
         join_rejects.path().string());
  }
  return out;
}

}  // namespace

RunReport Pipeline::BuildCareerStage() {
  RunReport report;
  fs::path geo_path = Require(outputs::kAffiliationsGeo, "build-careers", "geocode-affiliations");
  AffiliationCountryMap geo;
  {
    DelimitedReader reader(geo_path, DelimitedFormat::EnrichedCsv());
    std::vector<std::string> row;
    int64_t rows = 0;
    while (reader.Next(&row)) {
      if (reader.header() != GeoEnrichmentColumns()) {
        throw InputError(geo_path.string() + " does not have the expected columns");
      }
      ++rows;
      GeoEnrichment g = GeoEnrichmentFromCsvRow(row);
      if (g.country_alpha2) geo.emplace(g.affiliation_id, *g.country_alpha2);
    }
    report.AddStream("affiliations_geo", Counts(rows, rows, 0));
  }

  std::vector<AuthorshipTriple> triples = JoinedTriples(
      manifest_, config_, "build-careers", &report, [this](const std::string& m) { Warn(m); });
  CareerStats stats;
  std::vector<CareerYear> careers = BuildCareers(std::move(triples), geo, &stats);
  report.Count("duplicate_triples", stats.duplicate_triples);
  report.Count("geolocated_entries", stats.geolocated_entries);
  report.Count("ungeolocated_entries", stats.ungeolocated_entries);

  StagedFile file(Output(outputs::kAuthorCareer));
  JsonLinesWriter writer(file.tmp());
  int64_t authors = 0;
  std::span<const CareerYear> all(careers);
  for (size_t lo = 0; lo < careers.size();) {
    size_t hi = lo;
    while (hi < careers.size() && careers[hi].author_id == careers[lo].author_id) ++hi;
    writer.Write(CareerToJson(all.subspan(lo, hi - lo)));
    ++authors;
    lo = hi;
  }
  writer.Close();
  file.Commit();
  report.Count("authors", authors);
  report.Count("author_years", static_cast<int64_t>(careers.size()));
  report.outputs.push_back(outputs::kAuthorCareer);
  return report;
}

RunReport Pipeline::AnnualLocations() {
  RunReport report;
  fs::path path = Require(outputs::kAuthorCareer, "annual-locations", "build-careers");
  std::vector<CareerYear> careers;
  {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      if (TrimView(line).empty()) continue;
      for (CareerYear& y : CareerFromJson(line)) careers.push_back(std::move(y));
    }
  }
  std::vector<AuthorMobility> mobility = ComputeAuthorMobility(careers, config_.parallelism);

  StagedFile file(Output(outputs::kAuthorYearLocation));
  JsonLinesWriter writer(file.tmp());
  int64_t located = 0, with_nationality = 0, author_years = 0;
  for (const AuthorMobility& m : mobility) {
    writer.Write(MobilityToJson(m));
    located += !m.locations.empty();
    with_nationality += m.nationality.has_value();
    author_years += static_cast<int64_t>(m.locations.size());
  }
  writer.Close();
  file.Commit();
  report.AddStream("author_years", Counts(static_cast<int64_t>(careers.size()), author_years,
                                          static_cast<int64_t>(careers.size()) - author_years));
  report.Count("authors", static_cast<int64_t>(mobility.size()));
  report.Count("located_authors", located);
  report.Count("with_nationality", with_nationality);
  report.Count("unlocated_author_years", static_cast<int64_t>(careers.size()) - author_years);
  report.outputs.push_back(outputs::kAuthorYearLocation);
  return report;
}

RunReport Pipeline::Stocks() {
  RunReport report;
  std::vector<AuthorMobility> mobility =
      ReadMobility(Require(outputs::kAuthorYearLocation, "stocks", "annual-locations"));
  StockStats stats;
  std::vector<StockEntry> stocks = ComputeStocks(mobility, &stats);

  StagedFile file(Output(outputs::kStocks));
  CsvWriter writer(file.tmp(), {"country", "year", "stock", "located_authors", "working_natives",
                                "no_nationality"});
  for (const StockEntry& s : stocks) {
    writer.Write({s.country.str(), std::to_string(s.year), Str(s.stock), Str(s.located_authors),
                  Str(s.working_natives), Str(s.no_nationality)});
  }
  writer.Close();
  file.Commit();
  const auto authors = static_cast<int64_t>(mobility.size());
  report.AddStream("author_locations", Counts(authors, authors, 0));
  report.Count("authors", authors);
  report.Count("rows", static_cast<int64_t>(stocks.size()));
  report.Count("located_without_nationality", stats.located_without_nationality);
  report.outputs.push_back(outputs::kStocks);
  return report;
}

RunReport Pipeline::Flows() {
  RunReport report;
  std::vector<AuthorMobility> mobility =
      ReadMobility(Require(outputs::kAuthorYearLocation, "flows", "annual-locations"));
  std::vector<FlowEdge> flows = ComputeFlows(mobility);
  std::vector<CountryFlowTotals> totals = AggregateCountryFlows(flows);

  {
    StagedFile file(Output(outputs::kFlows));
    CsvWriter writer(file.tmp(), {"year", "origin", "destination", "weight", "returners",
                                  "origin_natives", "destination_natives"});
    for (const FlowEdge& f : flows) {
      writer.Write({std::to_string(f.year), f.origin.str(), f.destination.str(), Str(f.weight),
                    Str(f.returners), Str(f.origin_natives), Str(f.destination_natives)});
    }
    writer.Close();
    file.Commit();
  }
  {
    StagedFile file(Output(outputs::kCountryFlows));
    CsvWriter writer(file.tmp(), {"year", "country", "total_in", "total_out"});
    for (const CountryFlowTotals& t : totals) {
      writer.Write({std::to_string(t.year), t.country.str(), Str(t.total_in), Str(t.total_out)});
    }
    writer.Close();
    file.Commit();
  }
  int64_t moves = 0;
  for (const FlowEdge& f : flows) moves += f.weight;
  const auto authors = static_cast<int64_t>(mobility.size());
  report.AddStream("author_locations", Counts(authors, authors, 0));
  report.Count("authors", authors);
  report.Count("movements", moves);
  report.Count("edges", static_cast<int64_t>(flows.size()));
  report.outputs.push_back(outputs::kFlows);
  report.outputs.push_back(outputs::kCountryFlows);
  return report;
}

RunReport Pipeline::EgoNetworks() {
  RunReport report;
  std::vector<AuthorshipTriple> triples = JoinedTriples(
      manifest_, config_, "egonets", &report, [this](const std::string& m) { Warn(m); });
  EgoNetOptions options;
  options.max_authors_per_paper = config_.max_authors_per_paper;
  options.parallelism = config_.parallelism;
  EgoNetStats stats;
  std::vector<EgoNetwork> networks = BuildEgoNetworks(triples, options, &stats);

  StagedFile file(Output(outputs::kEgoNetworks));
  JsonLinesWriter writer(file.tmp());
  for (const EgoNetwork& n : networks) writer.Write(EgoNetworkToJson(n));
  writer.Close();
  file.Commit();
  report.Count("papers", stats.papers);
  report.Count("excluded_papers", stats.excluded_papers);
  report.Count("duplicate_authorships", stats.duplicate_authorships);
  report.Count("networks", stats.networks);
  if (stats.excluded_papers > 0) {
    Warn(Str(stats.excluded_papers) + " paper(s) with more than " +
         std::to_string(config_.max_authors_per_paper) + " authors excluded from ego networks");
  }
  report.outputs.push_back(outputs::kEgoNetworks);
  return report;
}

RunReport Pipeline::HIndex() {
  RunReport report;
  std::unordered_map<std::string, int64_t> citations;
  int64_t duplicate_papers = 0;
  for (PaperRecord& p : ReadSubset<PaperRecord>("papers", &report)) {
    if (!citations.emplace(std::move(p.paper_id), p.citation_count).second) ++duplicate_papers;
  }
  std::vector<AuthorshipTriple> rows =
      ReadSubset<AuthorshipTriple>("paper_author_affiliations", &report);
  RejectLog unknown(config_.output_dir, "paper_author_affiliations.hindex");
  std::vector<AuthorshipTriple> known;
  known.reserve(rows.size());
  for (AuthorshipTriple& t : rows) {
    if (citations.count(t.paper_id)) {
      known.push_back(std::move(t));
    } else {
      unknown.Record(0, "unknown paper", TripleRaw(t));
    }
  }
  report.AddStream("authorships", Counts(static_cast<int64_t>(rows.size()),
                                         static_cast<int64_t>(known.size()), unknown.count()));
  if (unknown.count() > 0) {
    Warn(Str(unknown.count()) + " authorship row(s) name unknown papers; see " + unknown.path().string());
  }

  std::vector<std::string> all_authors;
  if (manifest_.Has("authors")) {
    for (AuthorRecord& a : ReadSubset<AuthorRecord>("authors", &report)) {
      all_authors.push_back(std::move(a.author_id));
    }
  }
  HIndexStats stats;
  std::vector<AuthorHIndex> h = ComputeAuthorHIndex(known, citations, all_authors, &stats);

  StagedFile file(Output(outputs::kHIndex));
  CsvWriter writer(file.tmp(), {"author_id", "h_index"});
  int64_t sum = 0;
  for (const AuthorHIndex& a : h) {
    writer.Write({a.author_id, Str(a.h_index)});
    sum += a.h_index;
  }
  writer.Close();
  file.Commit();
  report.Count("authors", static_cast<int64_t>(h.size()));
  report.Count("h_index_sum", sum);
  report.Count("duplicate_papers", duplicate_papers);
  report.Count("duplicate_authorships", stats.duplicate_authorships);
  report.outputs.push_back(outputs::kHIndex);
  return report;
}

RunReport Pipeline::Abstracts() {
  RunReport report;
  LanguageDetectorOptions options;
  if (!config_.languages.empty()) options.languages = config_.languages;
  LanguageDetector detector(options);

  RejectLog rejects(config_.output_dir, "abstracts");
  RecordStream<AbstractInput> stream(manifest_.Get("abstracts"), &rejects, config_.malformed);
  StagedFile file(Output(outputs::kAbstracts));
  JsonLinesWriter writer(file.tmp());
  std::map<std::string, int64_t> languages;
  int64_t tokens = 0;

  std::vector<AbstractInput> batch;
  std::vector<std::string> lines;
  auto flush = [&] {
    lines.assign(batch.size(), {});
    std::vector<std::string> langs(batch.size());
    std::vector<int64_t> counts(batch.size());
    internal::ParallelChunks(batch.size(), config_.parallelism, [&](size_t, size_t begin, size_t end) {
      for (size_t i = begin; i < end; ++i) {
        AbstractRecord r = ProcessAbstract(batch[i].paper_id, batch[i].text, detector);
        langs[i] = r.language;
        counts[i] = r.counts.total();
        lines[i] = AbstractToJson(r);
      }
    });
    for (size_t i = 0; i < batch.size(); ++i) {
      writer.Write(lines[i]);
      ++languages[langs[i]];
      tokens += counts[i];
    }
    batch.clear();
  };
  while (auto a = stream.Next()) {
    batch.push_back(std::move(*a));
    if (batch.size() >= kAbstractBatch) flush();
  }
  flush();
  writer.Close();
  file.Commit();

  report.AddStream("abstracts", stream.counts());
  if (stream.counts().malformed > 0 && config_.malformed == MalformedPolicy::kReport) {
    Warn(Str(stream.counts().malformed) + " malformed record(s) in abstracts; see " +
         rejects.path().string());
  }
  for (const auto& [lang, n] : languages) report.Count("language." + lang, n);
  report.Count("tokens", tokens);
  report.outputs.push_back(outputs::kAbstracts);
  return report;
}

RunReport Pipeline::FosPropagate() {
  RunReport report;
  std::vector<FosRecord> nodes = ReadSubset<FosRecord>("fields_of_study", &report);
  std::vector<FosChildLink> links;
  if (manifest_.Has("fos_children")) links = ReadSubset<FosChildLink>("fos_children", &report);
  FosDagStats dag_stats;
  FosDag dag(std::move(nodes), links, &dag_stats);
  PropagationStats stats;
  std::vector<FosLabeling> labels = PropagateLabels(dag, config_.parallelism, &stats);

  StagedFile file(Output(outputs::kFosLabeled));
  CsvWriter writer(file.tmp(), {"fos_id", "area", "score"});
  for (const FosLabeling& l : labels) {
    if (l.scores.empty()) writer.Write({l.fos_id, "", ""});
    for (const auto& [area, score] : l.scores) writer.Write({l.fos_id, area, FormatDouble(score)});
  }
  writer.Close();
  file.Commit();
  report.Count("nodes", dag_stats.nodes);
  report.Count("links", dag_stats.links);
  report.Count("duplicate_links", dag_stats.duplicate_links);
  report.Count("labeled", stats.labeled);
  report.Count("unlabeled", stats.unlabeled);
  report.outputs.push_back(outputs::kFosLabeled);
  return report;
}

RunReport Pipeline::PaperAreas() {
  RunReport report;
  fs::path path = Require(outputs::kFosLabeled, "paper-areas", "fos-propagate");
  std::vector<FosLabeling> labels;
  {
    DelimitedReader reader(path, DelimitedFormat::EnrichedCsv());
    std::vector<std::string> row;
    const std::vector<std::string> header = {"fos_id", "area", "score"};
    int64_t rows = 0;
    while (reader.Next(&row)) {
      if (reader.header() != header || row.size() != 3) {
        throw InputError(path.string() + " does not have the expected columns");
      }
      ++rows;
      if (labels.empty() || labels.back().fos_id != row[0]) labels.push_back({row[0], {}});
      if (row[1].empty()) continue;
      auto score = ParseDouble(row[2]);
      if (!score) throw InputError("bad score '" + row[2] + "' in " + path.string());
      labels.back().scores[row[1]] = *score;
    }
    report.AddStream("fos_labeled", Counts(rows, rows, 0));
  }

  std::vector<PaperFosLink> links = ReadSubset<PaperFosLink>("paper_fos", &report);
  std::vector<std::string> papers;
  if (manifest_.Has("papers")) {
    for (PaperRecord& p : ReadSubset<PaperRecord>("papers", &report)) papers.push_back(std::move(p.paper_id));
  }
  RejectLog unknown(config_.output_dir, "paper_fos.paper-areas");
  PaperScoreStats stats;
  std::vector<PaperAreaScores> scores = ScorePapers(
      links, labels, papers,
      [&](const PaperFosLink& l, std::string_view reason) {
        unknown.Record(0, reason, l.paper_id + "\t" + l.fos_id);
      },
      &stats);
  report.AddStream("links", Counts(stats.links, stats.links - stats.unknown_fos, stats.unknown_fos));
  if (stats.unknown_fos > 0) {
    Warn(Str(stats.unknown_fos) + " paper_fos link(s) name unknown fields of study; see " +
         unknown.path().string());
  }

  StagedFile file(Output(outputs::kPaperAreas));
  CsvWriter writer(file.tmp(), {"paper_id", "area", "score"});
  for (const PaperAreaScores& p : scores) {
    if (p.scores.empty()) writer.Write({p.paper_id, "", ""});
    for (const auto& [area, score] : p.scores) writer.Write({p.paper_id, area, FormatDouble(score)});
  }
  writer.Close();
  file.Commit();
  report.Count("papers", stats.papers);
  report.Count("unlabeled_papers", stats.unlabeled_papers);
  report.Count("duplicate_links", stats.duplicate_links);
  report.outputs.push_back(outputs::kPaperAreas);
  return report;
}

}  // namespace kgenrich
