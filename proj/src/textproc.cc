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

#include "kgenrich/textproc.h"

#include <algorithm>
#include <array>
#include <memory>
#include <unordered_map>

#include <nlohmann/json.hpp>
#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "kgenrich/common.h"

namespace kgenrich {

namespace {

void AppendUtf8(UChar32 c, std::string* out) {
  if (c <= 0 || c > 0x10FFFF || (c >= 0xD800 && c <= 0xDFFF)) c = 0xFFFD;
  char buf[4];
  int32_t len = 0;
  [[maybe_unused]] UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, 4, c, error);
  out->append(buf, static_cast<size_t>(len));
}

const std::unordered_map<std::string_view, UChar32>& NamedEntities() {
  static const auto* kTable = new std::unordered_map<std::string_view, UChar32>{
      {"amp", '&'},       {"lt", '<'},         {"gt", '>'},        {"quot", '"'},
      {"apos", '\''},     {"nbsp", 0xA0},      {"ndash", 0x2013},  {"mdash", 0x2014},
      {"hellip", 0x2026}, {"laquo", 0xAB},     {"raquo", 0xBB},    {"lsquo", 0x2018},
      {"rsquo", 0x2019},  {"ldquo", 0x201C},   {"rdquo", 0x201D},  {"bull", 0x2022},
      {"middot", 0xB7},   {"copy", 0xA9},      {"reg", 0xAE},      {"trade", 0x2122},
      {"deg", 0xB0},      {"plusmn", 0xB1},    {"times", 0xD7},    {"divide", 0xF7},
      {"micro", 0xB5},    {"para", 0xB6},      {"sect", 0xA7},     {"le", 0x2264},
      {"ge", 0x2265},     {"ne", 0x2260},      {"asymp", 0x2248},  {"minus", 0x2212},
      {"prime", 0x2032},  {"infin", 0x221E},   {"sup2", 0xB2},     {"sup3", 0xB3},
      {"frac12", 0xBD},   {"frac14", 0xBC},    {"iexcl", 0xA1},    {"iquest", 0xBF},
      {"euro", 0x20AC},   {"pound", 0xA3},     {"yen", 0xA5},      {"cent", 0xA2},
      {"thinsp", 0x2009}, {"ensp", 0x2002},    {"emsp", 0x2003},   {"shy", 0xAD},
      {"agrave", 0xE0},   {"aacute", 0xE1},    {"acirc", 0xE2},    {"atilde", 0xE3},
      {"auml", 0xE4},     {"aring", 0xE5},     {"aelig", 0xE6},    {"ccedil", 0xE7},
      {"egrave", 0xE8},   {"eacute", 0xE9},    {"ecirc", 0xEA},    {"euml", 0xEB},
      {"igrave", 0xEC},   {"iacute", 0xED},    {"icirc", 0xEE},    {"iuml", 0xEF},
      {"ntilde", 0xF1},   {"ograve", 0xF2},    {"oacute", 0xF3},   {"ocirc", 0xF4},
      {"otilde", 0xF5},   {"ouml", 0xF6},      {"oslash", 0xF8},   {"ugrave", 0xF9},
      {"uacute", 0xFA},   {"ucirc", 0xFB},     {"uuml", 0xFC},     {"yacute", 0xFD},
      {"yuml", 0xFF},     {"szlig", 0xDF},     {"Agrave", 0xC0},   {"Aacute", 0xC1},
      {"Acirc", 0xC2},    {"Atilde", 0xC3},    {"Auml", 0xC4},     {"Aring", 0xC5},
      {"AElig", 0xC6},    {"Ccedil", 0xC7},    {"Egrave", 0xC8},   {"Eacute", 0xC9},
      {"Ecirc", 0xCA},    {"Euml", 0xCB},      {"Igrave", 0xCC},   {"Iacute", 0xCD},
      {"Icirc", 0xCE},    {"Iuml", 0xCF},      {"Ntilde", 0xD1},   {"Ograve", 0xD2},
      {"Oacute", 0xD3},   {"Ocirc", 0xD4},     {"Otilde", 0xD5},   {"Ouml", 0xD6},
      {"Oslash", 0xD8},   {"Ugrave", 0xD9},    {"Uacute", 0xDA},   {"Ucirc", 0xDB},
      {"Uuml", 0xDC},     {"Yacute", 0xDD},    {"alpha", 0x3B1},   {"beta", 0x3B2},
      {"gamma", 0x3B3},   {"delta", 0x3B4},    {"epsilon", 0x3B5}, {"zeta", 0x3B6},
      {"eta", 0x3B7},     {"theta", 0x3B8},    {"iota", 0x3B9},    {"kappa", 0x3BA},
      {"lambda", 0x3BB},  {"mu", 0x3BC},       {"nu", 0x3BD},      {"xi", 0x3BE},
      {"omicron", 0x3BF}, {"pi", 0x3C0},       {"rho", 0x3C1},     {"sigma", 0x3C3},
      {"tau", 0x3C4},     {"upsilon", 0x3C5},  {"phi", 0x3C6},     {"chi", 0x3C7},
      {"psi", 0x3C8},     {"omega", 0x3C9},    {"Alpha", 0x391},   {"Beta", 0x392},
      {"Gamma", 0x393},   {"Delta", 0x394},    {"Theta", 0x398},   {"Lambda", 0x39B},
      {"Pi", 0x3A0},      {"Sigma", 0x3A3},    {"Phi", 0x3A6},     {"Psi", 0x3A8},
      {"Omega", 0x3A9},
  };
  return *kTable;
}

bool IsAsciiAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool IsAsciiAlnum(char c) { return IsAsciiAlpha(c) || (c >= '0' && c <= '9'); }

// Parses the reference starting at text[i] == '&'. Returns the consumed
// length, or 0 if it is not a recognized reference.
size_t DecodeOne(std::string_view text, size_t i, std::string* out) {
  size_t j = i + 1;
  if (j < text.size() && text[j] == '#') {
    ++j;
    int base = 10;
    if (j < text.size() && (text[j] == 'x' || text[j] == 'X')) {
      base = 16;
      ++j;
    }
    size_t start = j;
    int64_t value = 0;
    while (j < text.size() && j - start < 8) {
      char c = text[j];
      int digit;
      if (c >= '0' && c <= '9') {
        digit = c - '0';
      } else if (base == 16 && c >= 'a' && c <= 'f') {
        digit = c - 'a' + 10;
      } else if (base == 16 && c >= 'A' && c <= 'F') {
        digit = c - 'A' + 10;
      } else {
        break;
      }
      value = value * base + digit;
      ++j;
    }
    if (j == start || j >= text.size() || text[j] != ';') return 0;
    AppendUtf8(static_cast<UChar32>(value), out);
    return j + 1 - i;
  }
  size_t start = j;
  while (j < text.size() && j - start < 10 && IsAsciiAlnum(text[j])) ++j;
  if (j == start || j >= text.size() || text[j] != ';') return 0;
  const auto& table = NamedEntities();
  auto it = table.find(text.substr(start, j - start));
  if (it == table.end()) return 0;
  AppendUtf8(it->second, out);
  return j + 1 - i;
}

bool IsBlockTag(std::string_view name) {
  static constexpr std::array<std::string_view, 32> kBlock = {
      "address", "article", "aside",  "blockquote", "br",     "dd",    "div",   "dl",
      "dt",      "figure",  "footer", "h1",         "h2",     "h3",    "h4",    "h5",
      "h6",      "header",  "hr",     "li",         "ol",     "p",     "pre",   "section",
      "table",   "tbody",   "td",     "th",         "thead",  "title", "tr",    "ul"};
  return std::find(kBlock.begin(), kBlock.end(), name) != kBlock.end();
}

// Space-collapsing appender over UTF-8 text.
class SpaceCollapser {
 public:
  void Append(std::string_view s) {
    int32_t i = 0;
    const int32_t n = static_cast<int32_t>(s.size());
    const auto* p = reinterpret_cast<const uint8_t*>(s.data());
    while (i < n) {
      int32_t start = i;
      UChar32 c;
      U8_NEXT(p, i, n, c);
      if (c >= 0 && (u_isUWhiteSpace(c) || c == 0x200B)) {
        pending_space_ = !out_.empty();
      } else {
        if (pending_space_) out_.push_back(' ');
        pending_space_ = false;
        out_.append(s.substr(start, i - start));
      }
    }
  }
  void Break() { pending_space_ = !out_.empty(); }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
  bool pending_space_ = false;
};

}  // namespace

std::string DecodeHtmlEntities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size();) {
    if (text[i] == '&') {
      size_t used = DecodeOne(text, i, &out);
      if (used > 0) {
        i += used;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string CleanMarkup(std::string_view text) {
  std::string stripped;
  std::vector<size_t> breaks;  // offsets in `stripped` where a block tag sat
  stripped.reserve(text.size());
  for (size_t i = 0; i < text.size();) {
    char c = text[i];
    bool tag_start = c == '<' && i + 1 < text.size() &&
                     (IsAsciiAlpha(text[i + 1]) || text[i + 1] == '/' || text[i + 1] == '!' ||
                      text[i + 1] == '?');
    if (!tag_start) {
      stripped.push_back(c);
      ++i;
      continue;
    }
    if (text.substr(i, 4) == "<!--") {
      size_t end = text.find("-->", i + 4);
      i = end == std::string_view::npos ? text.size() : end + 3;
      continue;
    }
    size_t end = text.find('>', i + 1);
    size_t next_open = text.find('<', i + 1);
    // An unterminated tag runs to the next '<' or the end of input.
    if (end == std::string_view::npos || (next_open != std::string_view::npos && next_open < end)) {
      i = next_open == std::string_view::npos ? text.size() : next_open;
      continue;
    }
    size_t name_start = i + 1 + (text[i + 1] == '/' ? 1 : 0);
    size_t name_end = name_start;
    while (name_end < end && IsAsciiAlnum(text[name_end])) ++name_end;
    std::string name = AsciiLower(text.substr(name_start, name_end - name_start));
    bool closing = text[i + 1] == '/';
    if (!closing && (name == "script" || name == "style")) {
      std::string close = "</" + name;
      size_t pos = i;
      size_t found = std::string_view::npos;
      while ((pos = text.find('<', pos + 1)) != std::string_view::npos) {
        if (AsciiLower(text.substr(pos, close.size())) == close) {
          found = pos;
          break;
        }
      }
      if (found == std::string_view::npos) {
        i = text.size();
      } else {
        size_t close_end = text.find('>', found);
        i = close_end == std::string_view::npos ? text.size() : close_end + 1;
      }
      breaks.push_back(stripped.size());
      continue;
    }
    if (IsBlockTag(name)) breaks.push_back(stripped.size());
    i = end + 1;
  }

  SpaceCollapser collapser;
  size_t prev = 0;
  for (size_t b : breaks) {
    collapser.Append(DecodeHtmlEntities(std::string_view(stripped).substr(prev, b - prev)));
    collapser.Break();
    prev = b;
  }
  collapser.Append(DecodeHtmlEntities(std::string_view(stripped).substr(prev)));
  return collapser.Take();
}

int64_t TokenCounts::total() const {
  int64_t n = 0;
  for (const auto& [token, count] : tokens) n += count;
  return n;
}

namespace {

bool IsHyphen(const icu::UnicodeString& s) {
  return s.length() == 1 && (s[0] == u'-' || s[0] == 0x2010 || s[0] == 0x2011);
}

}  // namespace

std::vector<std::string> Segment(std::string_view text) {
  std::string clean(text);
  SanitizeUtf8(&clean);
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(clean);
  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::BreakIterator> it(
      icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
  if (U_FAILURE(status)) throw ConsistencyError("ICU word break iterator unavailable");
  it->setText(u);

  struct Piece {
    int32_t start, end;
    bool word;
  };
  std::vector<Piece> pieces;
  for (int32_t start = it->first(), end = it->next(); end != icu::BreakIterator::DONE;
       start = end, end = it->next()) {
    bool word = it->getRuleStatus() >= UBRK_WORD_NUMBER;
    pieces.push_back({start, end, word});
  }

  std::vector<std::string> out;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (!pieces[i].word) continue;
    int32_t start = pieces[i].start, end = pieces[i].end;
    while (i + 2 < pieces.size() && pieces[i + 2].word &&
           IsHyphen(u.tempSubStringBetween(pieces[i + 1].start, pieces[i + 1].end))) {
      end = pieces[i + 2].end;
      i += 2;
    }
    icu::UnicodeString token = u.tempSubStringBetween(start, end);
    token.foldCase();
    std::string utf8;
    token.toUTF8String(utf8);
    out.push_back(std::move(utf8));
  }
  return out;
}

TokenCounts Tokenize(std::string_view text) {
  TokenCounts counts;
  for (std::string& token : Segment(text)) ++counts.tokens[std::move(token)];
  counts.types.reserve(counts.tokens.size());
  for (const auto& [token, n] : counts.tokens) counts.types.push_back(token);
  return counts;
}

AbstractRecord ProcessAbstract(std::string paper_id, std::string_view raw_text,
                               const LanguageDetector& detector) {
  AbstractRecord record;
  record.paper_id = std::move(paper_id);
  record.text = CleanMarkup(raw_text);
  record.language = detector.Detect(record.text);
  record.counts = Tokenize(record.text);
  return record;
}

std::string AbstractToJson(const AbstractRecord& record) {
  nlohmann::ordered_json j;
  j["paper_id"] = record.paper_id;
  j["language"] = record.language;
  j["text"] = record.text;
  nlohmann::ordered_json tokens = nlohmann::ordered_json::object();
  for (const auto& [token, n] : record.counts.tokens) tokens[token] = n;
  j["tokens"] = std::move(tokens);
  j["types"] = record.counts.types;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace kgenrich
