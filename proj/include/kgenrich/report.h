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

// Machine-readable run report written next to each stage's outputs.

#ifndef KGENRICH_REPORT_H_
#define KGENRICH_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kgenrich/ingest.h"

namespace kgenrich {

struct RunReport {
  std::string subcommand;
  // Per input or intermediate stream; each satisfies in == out + rejects.
  std::map<std::string, StreamCounts> streams;
  std::map<std::string, int64_t> counters;
  std::vector<std::string> outputs;
  std::vector<std::string> skipped_stages;
  double runtime_seconds = 0;

  void AddStream(const std::string& name, const StreamCounts& counts);
  void Count(const std::string& name, int64_t value) { counters[name] += value; }
  // Folds another report's streams, counters and outputs into this one,
  // prefixing names with `other.subcommand`.
  void Absorb(const RunReport& other);

  // Streams violating in == out + rejects, as "name: in=.. out=.. rejects=..".
  std::vector<std::string> Violations() const;

  std::string ToJson() const;
  void Write(const std::filesystem::path& path) const;
};

}  // namespace kgenrich

#endif  // KGENRICH_REPORT_H_
