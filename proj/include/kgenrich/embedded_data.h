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

// Tables compiled in from data/ at build time.

#ifndef KGENRICH_EMBEDDED_DATA_H_
#define KGENRICH_EMBEDDED_DATA_H_

#include <string_view>
#include <vector>

namespace kgenrich::embedded {

struct LanguageProfileText {
  std::string_view language;
  // Trigrams in rank order, one per line, '_' standing for a space.
  std::string_view ranked_trigrams;
};

std::string_view CountryTableCsv();
std::string_view TerritoryTableCsv();
const std::vector<LanguageProfileText>& LanguageProfiles();

}  // namespace kgenrich::embedded

#endif  // KGENRICH_EMBEDDED_DATA_H_
