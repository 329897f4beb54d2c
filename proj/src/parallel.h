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

#ifndef KGENRICH_SRC_PARALLEL_H_
#define KGENRICH_SRC_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace kgenrich::internal {

// Splits [0, n) into `parts` contiguous chunks and runs fn(part, begin, end)
// for each, one thread per chunk. With parts <= 1 everything runs inline.
// The first exception thrown by any chunk is rethrown.
template <typename Fn>
void ParallelChunks(size_t n, int parts, Fn&& fn) {
  size_t p = static_cast<size_t>(std::max(1, parts));
  p = std::min(p, std::max<size_t>(1, n));
  if (p == 1) {
    fn(size_t{0}, size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(p);
  for (size_t i = 0; i < p; ++i) {
    size_t begin = n * i / p, end = n * (i + 1) / p;
    threads.emplace_back([&, i, begin, end] {
      try {
        fn(i, begin, end);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace kgenrich::internal

#endif  // KGENRICH_SRC_PARALLEL_H_
