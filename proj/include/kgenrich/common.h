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

#ifndef KGENRICH_COMMON_H_
#define KGENRICH_COMMON_H_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgenrich {

// Bad input data, missing files, or an invalid configuration. The CLI maps
// this to exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant was violated (for example the h-index methods
// disagree). The CLI maps this to exit status 2.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ISO 3166-1 alpha-2 code stored inline, always upper case.
class CountryCode {
 public:
  constexpr CountryCode() = default;

  // Accepts exactly two ASCII letters in either case.
  static std::optional<CountryCode> Parse(std::string_view text);

  // Like Parse() but throws InputError.
  static CountryCode FromString(std::string_view text);

  bool empty() const { return chars_[0] == '\0'; }
  std::string_view view() const {
    return empty() ? std::string_view() : std::string_view(chars_.data(), 2);
  }
  std::string str() const { return std::string(view()); }

  auto operator<=>(const CountryCode&) const = default;

 private:
  std::array<char, 2> chars_{};
};

// ---- string helpers -------------------------------------------------------

std::string_view TrimView(std::string_view s);
std::string Trim(std::string_view s);

std::vector<std::string_view> SplitView(std::string_view s, char sep);

// ASCII-only lower casing; leaves other bytes untouched.
std::string AsciiLower(std::string_view s);

// Unicode full case folding (ICU). Invalid UTF-8 is replaced first.
std::string CaseFold(std::string_view s);

bool StartsWith(std::string_view s, std::string_view prefix);

// Replaces invalid UTF-8 sequences with U+FFFD. Returns the number of
// replacements made.
int64_t SanitizeUtf8(std::string* s);

// Strict integer and floating point parsing of an entire (trimmed) field.
std::optional<int64_t> ParseInt(std::string_view s);
std::optional<double> ParseDouble(std::string_view s);

// Shortest representation that round-trips through ParseDouble.
std::string FormatDouble(double value);

// Fixed-point with `digits` decimals, trailing zeros kept.
std::string FormatFixed(double value, int digits);

// Escapes tab, newline, carriage return and backslash for single-line TSV
// fields, and the inverse.
std::string EscapeTsvField(std::string_view s);
std::string UnescapeTsvField(std::string_view s);

}  // namespace kgenrich

template <>
struct std::hash<kgenrich::CountryCode> {
  size_t operator()(const kgenrich::CountryCode& c) const noexcept {
    return std::hash<std::string_view>()(c.view());
  }
};

#endif  // KGENRICH_COMMON_H_
