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

#include "kgenrich/infobox.h"

#include <algorithm>

#include "kgenrich/gazetteer.h"
#include "kgenrich/textproc.h"

namespace kgenrich {

namespace {

bool IStartsWith(std::string_view s, size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

size_t IFind(std::string_view s, std::string_view needle, size_t from) {
  for (size_t i = from; i + needle.size() <= s.size(); ++i) {
    if (IStartsWith(s, i, needle)) return i;
  }
  return std::string_view::npos;
}

// Length of an opaque span (comment or reference) starting at `pos`, or 0.
// Separators inside such spans never split parameters.
size_t OpaqueSpan(std::string_view s, size_t pos) {
  if (s.compare(pos, 4, "<!--") == 0) {
    size_t end = s.find("-->", pos + 4);
    return end == std::string_view::npos ? s.size() - pos : end + 3 - pos;
  }
  if (IStartsWith(s, pos, "<ref") &&
      (pos + 4 == s.size() || s[pos + 4] == '>' || s[pos + 4] == ' ' || s[pos + 4] == '/')) {
    size_t close = s.find('>', pos);
    if (close == std::string_view::npos) return s.size() - pos;
    if (s[close - 1] == '/') return close + 1 - pos;
    size_t end = IFind(s, "</ref>", close);
    return end == std::string_view::npos ? s.size() - pos : end + 6 - pos;
  }
  if (IStartsWith(s, pos, "<nowiki>")) {
    size_t end = IFind(s, "</nowiki>", pos);
    return end == std::string_view::npos ? s.size() - pos : end + 9 - pos;
  }
  return 0;
}

struct Part {
  std::string text;
  size_t eq = std::string::npos;  // first top-level '='
};

// Splits the body of a template whose "{{" ends right before `pos` into
// top-level '|' separated parts. Sets *end to the index just past the
// closing "}}" (or the end of input when unterminated).
std::vector<Part> SplitTemplate(std::string_view s, size_t pos, size_t* end) {
  std::vector<Part> parts(1);
  int depth = 1;
  int links = 0;
  size_t i = pos;
  while (i < s.size()) {
    if (size_t span = OpaqueSpan(s, i)) {
      parts.back().text.append(s.substr(i, span));
      i += span;
      continue;
    }
    if (s.compare(i, 2, "{{") == 0) {
      ++depth;
      parts.back().text += "{{";
      i += 2;
      continue;
    }
    if (s.compare(i, 2, "}}") == 0) {
      if (--depth == 0) {
        *end = i + 2;
        return parts;
      }
      parts.back().text += "}}";
      i += 2;
      continue;
    }
    if (s.compare(i, 2, "[[") == 0) {
      ++links;
      parts.back().text += "[[";
      i += 2;
      continue;
    }
    if (s.compare(i, 2, "]]") == 0) {
      if (links > 0) --links;
      parts.back().text += "]]";
      i += 2;
      continue;
    }
    char c = s[i];
    if (depth == 1 && links == 0) {
      if (c == '|') {
        parts.emplace_back();
        ++i;
        continue;
      }
      if (c == '=' && parts.back().eq == std::string::npos) {
        parts.back().eq = parts.back().text.size();
      }
    }
    parts.back().text.push_back(c);
    ++i;
  }
  *end = s.size();
  return parts;
}

bool IsDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string Pad2(std::string_view s) { return s.size() == 1 ? "0" + std::string(s) : std::string(s); }

std::string StripInner(std::string_view value, int depth);

std::string CollapseTemplate(const std::vector<Part>& parts, int depth) {
  std::string name = CaseFold(TrimView(parts[0].text));
  std::erase(name, '_');
  std::vector<std::string> positional;
  for (size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].eq == std::string::npos) positional.push_back(Trim(parts[i].text));
  }
  if (name == "coord" || StartsWith(name, "efn") || name == "sfn" || StartsWith(name, "cite")) {
    return "";
  }
  if (name.find("date") != std::string::npos || name == "founded" || name == "start") {
    std::vector<std::string> nums;
    for (const auto& p : positional) {
      if (!IsDigits(p) || nums.size() == 3) break;
      nums.push_back(nums.empty() ? p : Pad2(p));
    }
    if (!nums.empty()) {
      std::string out = nums[0];
      for (size_t i = 1; i < nums.size(); ++i) out += "-" + nums[i];
      return out;
    }
  }
  if (name == "plainlist" || name == "ubl" || name == "unbulletedlist" || name == "hlist" ||
      name == "flatlist" || name == "unbulleted list" || name == "plain list") {
    std::string out;
    for (const auto& p : positional) {
      std::string item = StripInner(p, depth + 1);
      if (item.empty()) continue;
      if (!out.empty()) out.push_back('\n');
      out += item;
    }
    return out;
  }
  if (positional.empty()) return "";
  return StripInner(positional[0], depth + 1);
}

std::string StripInner(std::string_view s, int depth) {
  if (depth > 32) return "";
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, 4, "<!--") == 0 || IStartsWith(s, i, "<ref")) {
      if (size_t span = OpaqueSpan(s, i)) {
        i += span;
        continue;
      }
    }
    if (IStartsWith(s, i, "<nowiki>")) {
      size_t span = OpaqueSpan(s, i);
      std::string_view inner = s.substr(i + 8, span >= 17 ? span - 17 : span - 8);
      out.append(inner);
      i += span;
      continue;
    }
    if (IStartsWith(s, i, "<br")) {
      size_t close = s.find('>', i);
      if (close != std::string_view::npos) {
        out.push_back('\n');
        i = close + 1;
        continue;
      }
    }
    if (s[i] == '<' && i + 1 < s.size() &&
        (std::isalpha(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '/')) {
      size_t close = s.find('>', i);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    if (s.compare(i, 2, "{{") == 0) {
      size_t end = 0;
      auto parts = SplitTemplate(s, i + 2, &end);
      out += CollapseTemplate(parts, depth);
      i = end;
      continue;
    }
    if (s.compare(i, 2, "[[") == 0) {
      // Find the matching "]]", allowing nested links in captions.
      int level = 0;
      size_t j = i;
      size_t close = std::string_view::npos;
      while (j + 1 < s.size()) {
        if (s.compare(j, 2, "[[") == 0) {
          ++level;
          j += 2;
        } else if (s.compare(j, 2, "]]") == 0) {
          if (--level == 0) {
            close = j;
            break;
          }
          j += 2;
        } else {
          ++j;
        }
      }
      if (close == std::string_view::npos) {
        i += 2;
        continue;
      }
      std::string_view inner = s.substr(i + 2, close - i - 2);
      std::string lowered = AsciiLower(inner.substr(0, std::min<size_t>(inner.size(), 9)));
      if (StartsWith(lowered, "file:") || StartsWith(lowered, "image:") ||
          StartsWith(lowered, "category:")) {
        i = close + 2;
        continue;
      }
      size_t bar = inner.rfind('|');
      out += StripInner(bar == std::string_view::npos ? inner : inner.substr(bar + 1), depth + 1);
      i = close + 2;
      continue;
    }
    if (s[i] == '[' && (IStartsWith(s, i + 1, "http") || s.compare(i + 1, 2, "//") == 0)) {
      size_t close = s.find(']', i);
      if (close != std::string_view::npos) {
        std::string_view inner = s.substr(i + 1, close - i - 1);
        size_t space = inner.find(' ');
        out.append(inner.substr(0, space));
        i = close + 1;
        continue;
      }
    }
    if (s.compare(i, 2, "''") == 0) {
      while (i < s.size() && s[i] == '\'') ++i;
      continue;
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

// Trims lines, collapses inner whitespace, drops empty lines and list
// bullets.
std::string TidyLines(std::string_view text) {
  std::string out;
  for (std::string_view line : SplitView(text, '\n')) {
    line = TrimView(line);
    while (!line.empty() && (line.front() == '*' || line.front() == '#')) {
      line.remove_prefix(1);
      line = TrimView(line);
    }
    if (line.empty()) continue;
    std::string collapsed;
    bool space = false;
    for (char c : line) {
      if (c == ' ' || c == '\t' || c == '\r') {
        space = true;
        continue;
      }
      if (space && !collapsed.empty()) collapsed.push_back(' ');
      space = false;
      collapsed.push_back(c);
    }
    if (!out.empty()) out.push_back('\n');
    out += collapsed;
  }
  return out;
}

std::string NormalizeKey(std::string_view key) {
  std::string k = CaseFold(TrimView(key));
  std::replace(k.begin(), k.end(), ' ', '_');
  return k;
}

// First listed keyword with a non-empty value; first occurrence within a
// keyword.
const InfoboxPair* FindByPriority(const InfoboxRaw& raw,
                                  const std::vector<std::string_view>& keys) {
  for (std::string_view key : keys) {
    for (const auto& pair : raw.pairs) {
      if (!pair.value.empty() && NormalizeKey(pair.key) == key) return &pair;
    }
  }
  return nullptr;
}

std::optional<std::string> FirstLine(const InfoboxPair* pair, bool* multi = nullptr) {
  if (!pair) return std::nullopt;
  size_t nl = pair->value.find('\n');
  if (multi) *multi = nl != std::string::npos;
  return pair->value.substr(0, nl);
}

}  // namespace

std::string StripWikiMarkup(std::string_view value) {
  return TidyLines(DecodeHtmlEntities(StripInner(value, 0)));
}

InfoboxRaw ParseInfobox(std::string_view wikitext) {
  InfoboxRaw raw;
  size_t pos = 0;
  while (true) {
    pos = wikitext.find("{{", pos);
    if (pos == std::string_view::npos) return raw;
    size_t name = pos + 2;
    while (name < wikitext.size() && (wikitext[name] == ' ' || wikitext[name] == '\n')) ++name;
    if (IStartsWith(wikitext, name, "infobox")) break;
    pos += 2;
  }
  size_t end = 0;
  auto parts = SplitTemplate(wikitext, pos + 2, &end);
  for (size_t i = 1; i < parts.size(); ++i) {
    const Part& part = parts[i];
    if (part.eq == std::string::npos) continue;
    std::string key = CaseFold(TrimView(std::string_view(part.text).substr(0, part.eq)));
    if (key.empty()) continue;
    std::string raw_value = Trim(std::string_view(part.text).substr(part.eq + 1));
    raw.pairs.push_back({std::move(key), StripWikiMarkup(raw_value), std::move(raw_value)});
  }
  return raw;
}

InfoboxFields ExtractFields(const InfoboxRaw& raw) {
  InfoboxFields f;
  f.city = FirstLine(FindByPriority(raw, kCityKeys), &f.multi_location);
  f.state = FirstLine(FindByPriority(raw, {"state"}));
  f.country = FirstLine(FindByPriority(raw, {"country"}));
  f.acronym = FirstLine(FindByPriority(raw, kAcronymKeys));
  f.foundation_date = FirstLine(FindByPriority(raw, kFoundationKeys));
  f.homepage = FirstLine(FindByPriority(raw, kHomepageKeys));
  f.entity_type = FirstLine(FindByPriority(raw, {"type"}));
  return f;
}

GeoEnrichment ResolveLocation(const InfoboxFields& fields, const Gazetteer& gazetteer,
                              const CountryTable& countries, const CountryMatchOptions& options,
                              ResolveStats* stats) {
  ResolveStats local;
  if (!stats) stats = &local;
  GeoEnrichment g;
  g.provenance = Provenance::kUrl;

  std::vector<const GazetteerEntry*> candidates;
  std::string city_text;
  if (fields.city && !TrimView(*fields.city).empty()) {
    city_text = Trim(*fields.city);
    candidates = gazetteer.FindByName(city_text);
    if (candidates.empty()) {
      // "Cambridge, Massachusetts" -> "Cambridge"
      size_t comma = city_text.find(',');
      if (comma != std::string::npos) candidates = gazetteer.FindByName(city_text.substr(0, comma));
    }
    if (!candidates.empty()) ++stats->city_matches;
  }

  auto try_country = [&](const std::optional<std::string>& text) -> const CountryRecord* {
    if (!text || TrimView(*text).empty()) return nullptr;
    auto match = countries.Match(*text, options);
    return match ? match->record : nullptr;
  };

  bool state_consumed = false;
  const CountryRecord* country = try_country(fields.country);
  if (country) {
    ++stats->country_from_country;
  } else if ((country = try_country(fields.state))) {
    ++stats->country_from_state;
    state_consumed = true;
  } else if (!candidates.empty()) {
    country = countries.Find(candidates.front()->country_alpha2);
    if (country) ++stats->country_from_city;
  }
  if (country) g.SetCountry(*country);

  const GazetteerEntry* city = nullptr;
  for (const auto* c : candidates) {
    if (!country || c->country_alpha2 == country->alpha2) {
      city = c;
      break;
    }
  }
  if (city) {
    g.city = city->city_name;
    g.city_latitude = city->latitude;
    g.city_longitude = city->longitude;
  } else if (!city_text.empty()) {
    g.city = city_text;
  }
  if (fields.state && !state_consumed && !TrimView(*fields.state).empty()) g.state = fields.state;

  if (fields.foundation_date) {
    g.foundation_date_raw = fields.foundation_date;
    g.foundation_date = NormalizeFoundationDate(*fields.foundation_date);
  }
  g.acronym = fields.acronym;
  g.homepage = fields.homepage;
  g.entity_type = fields.entity_type;
  return g;
}

void InfoboxStore::Add(std::string affiliation_id, std::string wikitext) {
  docs_.insert_or_assign(std::move(affiliation_id), std::move(wikitext));
}

const std::string* InfoboxStore::Find(std::string_view affiliation_id) const {
  auto it = docs_.find(std::string(affiliation_id));
  return it == docs_.end() ? nullptr : &it->second;
}

}  // namespace kgenrich
