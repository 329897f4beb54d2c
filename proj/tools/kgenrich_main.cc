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

// Command-line entry point: one subcommand per pipeline stage.
//
// Exit status: 0 on success, 1 on input or validation errors, 2 on internal
// consistency failures.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgenrich/common.h"
#include "kgenrich/ingest.h"
#include "kgenrich/pipeline.h"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitConsistency = 2;

const char* Describe(const std::string& stage) {
  if (stage == "geocode-affiliations") return "Geolocate affiliations (AffiliationsGeo.csv)";
  if (stage == "build-careers") return "Join authorships with years and countries (AuthorCareer.jsonl)";
  if (stage == "annual-locations") return "Annual locations and career nationality (AuthorYearLocation.jsonl)";
  if (stage == "stocks") return "Annual stocks per country (StocksAnnual.csv)";
  if (stage == "flows") return "Annual flows (FlowsAnnual.csv, CountryAnnualFlowsAggregated.csv)";
  if (stage == "egonets") return "Annual co-authorship ego networks (AuthorEgoNetworks.jsonl)";
  if (stage == "hindex") return "Author h-index (Authors_Hindex.csv)";
  if (stage == "abstracts") return "Language, tokens and types of abstracts (AbstractsProcessed.jsonl)";
  if (stage == "fos-propagate") return "Research-area labels for fields of study (FieldOfStudyLabeled.csv)";
  if (stage == "paper-areas") return "Research-area scores per paper (PaperFieldsOfStudyLabeled.csv)";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enrichment pipeline for academic knowledge-graph dumps"};
  app.name("kgenrich");
  app.require_subcommand(1, 1);

  std::string manifest_path;
  std::string output_dir;
  size_t memory_budget = size_t{1} << 30;
  int parallelism = 1;
  bool skip_malformed = false;
  double max_distance_km = -1;
  double min_similarity = 0.85;
  std::vector<std::string> languages;
  size_t max_authors = 500;
  bool quiet = false;

  app.add_option("-m,--manifest", manifest_path, "Manifest naming the input subsets")
      ->envname("KGENRICH_MANIFEST")
      ->check(CLI::ExistingFile)
      ->required();
  app.add_option("-o,--out", output_dir, "Output directory")->envname("KGENRICH_OUT")->required();
  app.add_option("--memory-budget", memory_budget,
                 "Memory budget for the paper index before spilling to disk (e.g. 512MB, 2GB)")
      ->envname("KGENRICH_MEMORY_BUDGET")
      ->transform(CLI::AsSizeValue(false))
      ->capture_default_str();
  app.add_option("-j,--parallelism", parallelism, "Worker threads per stage")
      ->envname("KGENRICH_PARALLELISM")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--skip-malformed", skip_malformed,
               "Count malformed lines without writing rejects files or warning")
      ->envname("KGENRICH_SKIP_MALFORMED");
  app.add_option("--max-distance-km", max_distance_km,
                 "Ignore reverse-geocoding hits farther than this (default: no limit)")
      ->envname("KGENRICH_MAX_DISTANCE_KM")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--country-min-similarity", min_similarity,
                 "Minimum name similarity for fuzzy country matches")
      ->envname("KGENRICH_COUNTRY_MIN_SIMILARITY")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--languages", languages, "Comma-separated language codes for detection")
      ->envname("KGENRICH_LANGUAGES")
      ->delimiter(',');
  app.add_option("--max-authors-per-paper", max_authors,
                 "Exclude papers with more authors from ego networks")
      ->envname("KGENRICH_MAX_AUTHORS_PER_PAPER")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("-q,--quiet", quiet, "Suppress warnings")->envname("KGENRICH_QUIET");

  std::vector<std::string> stages = kgenrich::Pipeline::Stages();
  for (const std::string& stage : stages) app.add_subcommand(stage, Describe(stage))->fallthrough();
  app.add_subcommand("all", "Run every stage whose inputs are in the manifest")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    kgenrich::PipelineConfig config;
    config.output_dir = output_dir;
    config.memory_budget_bytes = memory_budget;
    config.parallelism = parallelism;
    config.malformed = skip_malformed ? kgenrich::MalformedPolicy::kSkip : kgenrich::MalformedPolicy::kReport;
    if (max_distance_km >= 0) config.max_distance_km = max_distance_km;
    config.country_min_similarity = min_similarity;
    config.languages = languages;
    config.max_authors_per_paper = max_authors;
    config.log = quiet ? nullptr : &std::cerr;

    kgenrich::Pipeline pipeline(kgenrich::Manifest::Load(manifest_path), config);
    kgenrich::RunReport report = pipeline.Run(subcommand);
    for (const std::string& out : report.outputs) std::cout << "wrote " << out << '\n';
    for (const std::string& skipped : report.skipped_stages) std::cout << "skipped " << skipped << '\n';
    std::cout << "report " << subcommand << ".report.json\n";
  } catch (const kgenrich::ConsistencyError& e) {
    std::cerr << "kgenrich: internal consistency error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const kgenrich::InputError& e) {
    std::cerr << "kgenrich: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "kgenrich: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
