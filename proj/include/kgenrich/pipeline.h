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

// Stage orchestration over a manifest. Each stage reads dumps named in the
// manifest and earlier stage outputs from the output directory, writes its
// own outputs there, and leaves a `<stage>.report.json` beside them.

#ifndef KGENRICH_PIPELINE_H_
#define KGENRICH_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgenrich/ingest.h"
#include "kgenrich/report.h"

namespace kgenrich {

namespace outputs {
inline constexpr char kAffiliationsGeo[] = "AffiliationsGeo.csv";
inline constexpr char kAuthorCareer[] = "AuthorCareer.jsonl";
inline constexpr char kAuthorYearLocation[] = "AuthorYearLocation.jsonl";
inline constexpr char kStocks[] = "StocksAnnual.csv";
inline constexpr char kFlows[] = "FlowsAnnual.csv";
inline constexpr char kCountryFlows[] = "CountryAnnualFlowsAggregated.csv";
inline constexpr char kEgoNetworks[] = "AuthorEgoNetworks.jsonl";
inline constexpr char kHIndex[] = "Authors_Hindex.csv";
inline constexpr char kAbstracts[] = "AbstractsProcessed.jsonl";
inline constexpr char kFosLabeled[] = "FieldOfStudyLabeled.csv";
inline constexpr char kPaperAreas[] = "PaperFieldsOfStudyLabeled.csv";
}  // namespace outputs

struct PipelineConfig {
  std::filesystem::path output_dir;
  size_t memory_budget_bytes = size_t{1} << 30;
  int parallelism = 1;
  MalformedPolicy malformed = MalformedPolicy::kReport;

  // geocode-affiliations
  std::optional<double> max_distance_km;
  double country_min_similarity = 0.85;
  // abstracts; empty means the default set
  std::vector<std::string> languages;
  // egonets
  size_t max_authors_per_paper = 500;

  // Warnings go here; null silences them.
  std::ostream* log = nullptr;
};

class Pipeline {
 public:
  // Throws InputError if parallelism < 1 or the output directory cannot be
  // created.
  Pipeline(Manifest manifest, PipelineConfig config);

  // Runs one subcommand (or "all") and writes its report. Throws InputError
  // for bad input or a missing prerequisite, ConsistencyError for internal
  // invariant failures.
  RunReport Run(std::string_view subcommand);

  // Stage names in execution order, without "all".
  static const std::vector<std::string>& Stages();

 private:
  RunReport GeocodeAffiliations();
  RunReport BuildCareerStage();
  RunReport AnnualLocations();
  RunReport Stocks();
  RunReport Flows();
  RunReport EgoNetworks();
  RunReport HIndex();
  RunReport Abstracts();
  RunReport FosPropagate();
  RunReport PaperAreas();
  RunReport All();

  RunReport Dispatch(std::string_view stage);
  // Manifest subsets a stage cannot run without.
  static std::vector<std::string> RequiredSubsets(std::string_view stage);
  std::filesystem::path Output(std::string_view name) const;
  std::filesystem::path Require(std::string_view name, std::string_view stage,
                                std::string_view producer) const;
  void Warn(const std::string& message) const;
  template <typename Record>
  std::vector<Record> ReadSubset(std::string_view subset, RunReport* report);

  Manifest manifest_;
  PipelineConfig config_;
};

}  // namespace kgenrich

#endif  // KGENRICH_PIPELINE_H_
