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

#include <algorithm>
#include <limits>
#include <unordered_map>

#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "kgenrich/common.h"
#include "kgenrich/embedded_data.h"
#include "kgenrich/textproc.h"

namespace kgenrich {

namespace {

constexpr char kUndetermined[] = "und";

// Lowercased letter runs, each wrapped in spaces.
std::vector<icu::UnicodeString> Words(std::string_view text) {
  std::string clean(text);
  SanitizeUtf8(&clean);
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(clean);
  u.toLower(icu::Locale::getRoot());
  std::vector<icu::UnicodeString> words;
  icu::UnicodeString current;
  for (int32_t i = 0; i < u.length();) {
    UChar32 c = u.char32At(i);
    if (u_isalpha(c)) {
      current.append(c);
    } else if (!current.isEmpty()) {
      words.push_back(icu::UnicodeString(u' ') + current + u' ');
      current.remove();
    }
    i += U16_LENGTH(c);
  }
  if (!current.isEmpty()) words.push_back(icu::UnicodeString(u' ') + current + u' ');
  return words;
}

size_t CodePointLength(std::string_view text) {
  size_t n = 0;
  for (unsigned char c : text) n += (c & 0xC0) != 0x80;
  return n;
}

}  // namespace

std::vector<std::string> LanguageDetector::RankedTrigrams(std::string_view text, size_t limit) {
  std::unordered_map<std::string, int64_t> counts;
  for (const icu::UnicodeString& word : Words(text)) {
    std::vector<int32_t> starts;
    for (int32_t i = 0; i < word.length(); i += U16_LENGTH(word.char32At(i))) starts.push_back(i);
    starts.push_back(word.length());
    for (size_t k = 0; k + 3 < starts.size(); ++k) {
      std::string gram;
      word.tempSubStringBetween(starts[k], starts[k + 3]).toUTF8String(gram);
      ++counts[std::move(gram)];
    }
  }
  std::vector<std::pair<std::string, int64_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > limit) ranked.resize(limit);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [gram, n] : ranked) out.push_back(std::move(gram));
  return out;
}

std::vector<std::string> LanguageDetector::BundledLanguages() {
  std::vector<std::string> out;
  for (const auto& p : embedded::LanguageProfiles()) out.emplace_back(p.language);
  return out;
}

LanguageDetector::LanguageDetector(LanguageDetectorOptions options) : options_(std::move(options)) {
  if (options_.profile_size == 0) throw InputError("language profile size must be positive");
  if (options_.languages.empty()) options_.languages = BundledLanguages();
  for (const std::string& language : options_.languages) {
    const auto& bundled = embedded::LanguageProfiles();
    auto it = std::find_if(bundled.begin(), bundled.end(),
                           [&](const auto& p) { return p.language == language; });
    if (it == bundled.end()) throw InputError("no bundled language profile for '" + language + "'");
    Profile profile;
    profile.language = language;
    for (std::string_view line : SplitView(it->ranked_trigrams, '\n')) {
      line = TrimView(line);
      if (line.empty()) continue;
      if (profile.rank.size() >= options_.profile_size) break;
      std::string gram(line);
      std::replace(gram.begin(), gram.end(), '_', ' ');
      profile.rank.emplace(std::move(gram), profile.rank.size());
    }
    profiles_.push_back(std::move(profile));
  }
}

std::vector<std::pair<std::string, double>> LanguageDetector::Distances(std::string_view text) const {
  std::vector<std::string> grams = RankedTrigrams(text, options_.profile_size);
  std::vector<std::pair<std::string, double>> out;
  for (const Profile& profile : profiles_) {
    const size_t penalty = options_.profile_size;
    size_t distance = 0;
    for (size_t r = 0; r < grams.size(); ++r) {
      auto it = profile.rank.find(grams[r]);
      if (it == profile.rank.end()) {
        distance += penalty;
      } else {
        distance += it->second > r ? it->second - r : r - it->second;
      }
    }
    double normalized =
        grams.empty() ? 1.0 : static_cast<double>(distance) / static_cast<double>(grams.size() * penalty);
    out.emplace_back(profile.language, normalized);
  }
  return out;
}

std::string LanguageDetector::Detect(std::string_view text) const {
  std::string_view trimmed = TrimView(text);
  if (CodePointLength(trimmed) < options_.min_chars) return kUndetermined;
  std::string best = kUndetermined;
  double best_distance = std::numeric_limits<double>::infinity();
  for (const auto& [language, distance] : Distances(trimmed)) {
    if (distance < best_distance) {
      best_distance = distance;
      best = language;
    }
  }
  if (best_distance > options_.max_normalized_distance) return kUndetermined;
  return best;
}

}  // namespace kgenrich
