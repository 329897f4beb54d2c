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

// Line-oriented readers and writers for the two tabular conventions used
// throughout: raw dumps (headerless, tab separated, no quoting) and enriched
// outputs (comma separated, RFC 4180 quoting, header row).

#ifndef KGENRICH_CSV_H_
#define KGENRICH_CSV_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace kgenrich {

struct DelimitedFormat {
  char delimiter = '\t';
  bool header = false;
  // RFC 4180 double-quote handling. Raw dumps are never quoted.
  bool quoted = false;

  static DelimitedFormat RawDump() { return {'\t', false, false}; }
  static DelimitedFormat EnrichedCsv() { return {',', true, true}; }
};

class DelimitedReader {
 public:
  // Throws InputError when the file cannot be opened.
  DelimitedReader(const std::filesystem::path& path, DelimitedFormat format);
  // Reads from an in-memory buffer; used for embedded tables and tests.
  DelimitedReader(std::string contents, DelimitedFormat format);

  DelimitedReader(DelimitedReader&&) = default;
  DelimitedReader& operator=(DelimitedReader&&) = default;

  // Reads the next record. Returns false at end of input. Blank lines are
  // skipped.
  bool Next(std::vector<std::string>* fields);

  const std::vector<std::string>& header() const { return header_; }
  // 1-based line number where the last record started.
  int64_t line_number() const { return record_line_; }
  // The raw text of the last record (without line terminator).
  const std::string& raw_record() const { return raw_; }
  int64_t invalid_utf8() const { return invalid_utf8_; }
  const std::string& source_name() const { return source_; }

 private:
  bool ReadLine(std::string* line);

  std::unique_ptr<std::istream> in_;
  DelimitedFormat format_;
  std::string source_;
  std::vector<std::string> header_;
  std::string raw_;
  int64_t line_ = 0;
  int64_t record_line_ = 0;
  int64_t invalid_utf8_ = 0;
};

// Quotes a field for CSV output when it contains the delimiter, a quote, or
// a line break.
std::string CsvQuote(std::string_view field);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  CsvWriter(std::ostream* out, const std::vector<std::string>& header);

  void Write(const std::vector<std::string>& row);
  void Close();

  int64_t rows() const { return rows_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
  size_t arity_;
  int64_t rows_ = 0;
};

// Writes one serialized JSON object per line.
class JsonLinesWriter {
 public:
  explicit JsonLinesWriter(const std::filesystem::path& path);
  void Write(const std::string& json_object);
  void Close();
  int64_t rows() const { return rows_; }

 private:
  std::ofstream file_;
  int64_t rows_ = 0;
};

// Opens a file for writing, throwing InputError on failure.
std::ofstream OpenForWrite(const std::filesystem::path& path);

}  // namespace kgenrich

#endif  // KGENRICH_CSV_H_
