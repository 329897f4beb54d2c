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

#include "kgenrich/report.h"

#include <nlohmann/json.hpp>

#include "kgenrich/csv.h"

namespace kgenrich {

void RunReport::AddStream(const std::string& name, const StreamCounts& counts) {
  StreamCounts& s = streams[name];
  s.in += counts.in;
  s.out += counts.out;
  s.rejects += counts.rejects;
  s.malformed += counts.malformed;
  s.invalid_utf8 += counts.invalid_utf8;
}

void RunReport::Absorb(const RunReport& other) {
  for (const auto& [name, counts] : other.streams) AddStream(other.subcommand + "." + name, counts);
  for (const auto& [name, value] : other.counters) Count(other.subcommand + "." + name, value);
  outputs.insert(outputs.end(), other.outputs.begin(), other.outputs.end());
  skipped_stages.insert(skipped_stages.end(), other.skipped_stages.begin(),
                        other.skipped_stages.end());
}

std::vector<std::string> RunReport::Violations() const {
  std::vector<std::string> out;
  for (const auto& [name, s] : streams) {
    if (s.in != s.out + s.rejects) {
      out.push_back(name + ": in=" + std::to_string(s.in) + " out=" + std::to_string(s.out) +
                    " rejects=" + std::to_string(s.rejects));
    }
  }
  return out;
}

std::string RunReport::ToJson() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  nlohmann::ordered_json js = nlohmann::ordered_json::object();
  for (const auto& [name, s] : streams) {
    js[name] = {{"in", s.in},
                {"out", s.out},
                {"rejects", s.rejects},
                {"malformed", s.malformed},
                {"invalid_utf8", s.invalid_utf8}};
  }
  j["streams"] = std::move(js);
  nlohmann::ordered_json jc = nlohmann::ordered_json::object();
  for (const auto& [name, value] : counters) jc[name] = value;
  j["counters"] = std::move(jc);
  j["outputs"] = outputs;
  j["skipped_stages"] = skipped_stages;
  j["runtime_seconds"] = runtime_seconds;
  return j.dump(2);
}

void RunReport::Write(const std::filesystem::path& path) const {
  std::ofstream out = OpenForWrite(path);
  out << ToJson() << '\n';
}

}  // namespace kgenrich
