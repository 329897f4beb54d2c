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

// Abstract cleaning, tokenization and language identification.

#ifndef KGENRICH_TEXTPROC_H_
#define KGENRICH_TEXTPROC_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgenrich {

// Decodes named (common HTML set) and numeric character references. Unknown
// references are left as written.
std::string DecodeHtmlEntities(std::string_view text);

// Removes HTML tags (tolerating unclosed and unbalanced ones), decodes
// entities and collapses whitespace to single spaces. Block-level tags
// separate words; inline tags do not.
std::string CleanMarkup(std::string_view text);

struct TokenCounts {
  std::map<std::string, int64_t> tokens;
  std::vector<std::string> types;  // sorted, equals the key set of `tokens`

  int64_t total() const;
};

// Unicode word segmentation (UAX #29) with casefolded output. Segments made
// only of punctuation or whitespace are dropped; numbers are kept. Word
// segments joined by a single '-' with no surrounding space are kept as one
// token ("covid-19").
TokenCounts Tokenize(std::string_view text);

// The plain segment list behind Tokenize(), in text order.
std::vector<std::string> Segment(std::string_view text);

struct LanguageDetectorOptions {
  // Codes to consider; must all have bundled profiles. Empty means all.
  std::vector<std::string> languages = {"en", "fr", "de", "es", "it", "pt", "nl"};
  size_t profile_size = 300;
  size_t min_chars = 20;
  // Reject when the best out-of-place distance, as a fraction of the worst
  // possible distance, exceeds this.
  double max_normalized_distance = 0.85;
};

// Character-trigram rank-order classifier (out-of-place distance).
class LanguageDetector {
 public:
  explicit LanguageDetector(LanguageDetectorOptions options = {});

  // ISO 639-1 code, or "und" for short or unrecognized text.
  std::string Detect(std::string_view text) const;

  // Distance to every configured profile, for diagnostics.
  std::vector<std::pair<std::string, double>> Distances(std::string_view text) const;

  // Ranked trigrams of a text, most frequent first (ties by byte order).
  static std::vector<std::string> RankedTrigrams(std::string_view text, size_t limit);

  static std::vector<std::string> BundledLanguages();

 private:
  struct Profile {
    std::string language;
    std::unordered_map<std::string, size_t> rank;
  };

  LanguageDetectorOptions options_;
  std::vector<Profile> profiles_;
};

struct AbstractRecord {
  std::string paper_id;
  std::string text;
  std::string language;
  TokenCounts counts;
};

AbstractRecord ProcessAbstract(std::string paper_id, std::string_view raw_text,
                               const LanguageDetector& detector);

// One JSON object per line: paper_id, language, text, tokens, types.
std::string AbstractToJson(const AbstractRecord& record);

}  // namespace kgenrich

#endif  // KGENRICH_TEXTPROC_H_
