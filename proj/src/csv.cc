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

#include "kgenrich/csv.h"

#include "kgenrich/common.h"

namespace kgenrich {

namespace {

// Splits a quoted CSV record. Returns false when a quoted field is still open
// at the end of `record` (the caller then appends the next physical line).
bool SplitQuoted(std::string_view record, char delim, std::vector<std::string>* fields) {
  fields->clear();
  std::string cur;
  bool in_quotes = false;
  bool field_quoted = false;
  for (size_t i = 0; i < record.size(); ++i) {
    char c = record[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < record.size() && record[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && (cur.empty() && !field_quoted)) {
      in_quotes = true;
      field_quoted = true;
    } else if (c == delim) {
      fields->push_back(std::move(cur));
      cur.clear();
      field_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (in_quotes) return false;
  fields->push_back(std::move(cur));
  return true;
}

void SplitPlain(std::string_view record, char delim, std::vector<std::string>* fields) {
  fields->clear();
  size_t start = 0;
  while (true) {
    size_t pos = record.find(delim, start);
    if (pos == std::string_view::npos) {
      fields->emplace_back(record.substr(start));
      return;
    }
    fields->emplace_back(record.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

DelimitedReader::DelimitedReader(const std::filesystem::path& path, DelimitedFormat format)
    : format_(format), source_(path.string()) {
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!file->is_open()) throw InputError("cannot open input file " + path.string());
  in_ = std::move(file);
  if (format_.header) {
    std::vector<std::string> fields;
    if (Next(&fields)) header_ = std::move(fields);
  }
}

DelimitedReader::DelimitedReader(std::string contents, DelimitedFormat format)
    : in_(std::make_unique<std::istringstream>(std::move(contents))),
      format_(format),
      source_("<memory>") {
  if (format_.header) {
    std::vector<std::string> fields;
    if (Next(&fields)) header_ = std::move(fields);
  }
}

bool DelimitedReader::ReadLine(std::string* line) {
  if (!std::getline(*in_, *line)) return false;
  ++line_;
  if (!line->empty() && line->back() == '\r') line->pop_back();
  // A UTF-8 byte-order mark on the first line is not data.
  if (line_ == 1 && StartsWith(*line, "\xEF\xBB\xBF")) line->erase(0, 3);
  invalid_utf8_ += SanitizeUtf8(line);
  return true;
}

bool DelimitedReader::Next(std::vector<std::string>* fields) {
  std::string line;
  do {
    if (!ReadLine(&line)) return false;
  } while (line.empty());
  record_line_ = line_;
  raw_ = std::move(line);
  if (!format_.quoted) {
    SplitPlain(raw_, format_.delimiter, fields);
    return true;
  }
  while (!SplitQuoted(raw_, format_.delimiter, fields)) {
    std::string more;
    if (!ReadLine(&more)) {
      // Unterminated quote at EOF: take what we have.
      raw_.push_back('"');
      SplitQuoted(raw_, format_.delimiter, fields);
      return true;
    }
    raw_.push_back('\n');
    raw_ += more;
  }
  return true;
}

std::string CsvQuote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open()) throw InputError("cannot open output file " + path.string());
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : file_(OpenForWrite(path)), out_(&file_), arity_(header.size()) {
  Write(header);
  rows_ = 0;
}

CsvWriter::CsvWriter(std::ostream* out, const std::vector<std::string>& header)
    : out_(out), arity_(header.size()) {
  Write(header);
  rows_ = 0;
}

void CsvWriter::Write(const std::vector<std::string>& row) {
  if (row.size() != arity_) {
    throw ConsistencyError("CSV row arity " + std::to_string(row.size()) + " != header arity " +
                           std::to_string(arity_));
  }
  std::string line;
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) line.push_back(',');
    line += CsvQuote(row[i]);
  }
  line.push_back('\n');
  out_->write(line.data(), static_cast<std::streamsize>(line.size()));
  ++rows_;
}

void CsvWriter::Close() {
  out_->flush();
  if (file_.is_open()) file_.close();
}

JsonLinesWriter::JsonLinesWriter(const std::filesystem::path& path) : file_(OpenForWrite(path)) {}

void JsonLinesWriter::Write(const std::string& json_object) {
  file_.write(json_object.data(), static_cast<std::streamsize>(json_object.size()));
  file_.put('\n');
  ++rows_;
}

void JsonLinesWriter::Close() { file_.close(); }

}  // namespace kgenrich
