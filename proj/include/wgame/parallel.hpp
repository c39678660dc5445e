// Copyright 2026 The wgame Authors.
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

// Deterministic chunked parallelism. Work over [0, n) is split into
// contiguous chunks, and chunk results are always merged in chunk order, so
// callers get the same answer for any thread count.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wgame {

struct ExecOptions {
  unsigned threads = 1;
};

// Calls body(begin, end) on disjoint contiguous chunks covering [0, n) and
// returns the per-chunk results in order.
template <typename T, typename Body>
std::vector<T> ParallelChunks(std::size_t n, const ExecOptions& exec, Body body) {
  std::size_t k = std::max<std::size_t>(1, std::min<std::size_t>(exec.threads, n));
  std::vector<T> results(k);
  if (k == 1) {
    results[0] = body(std::size_t{0}, n);
    return results;
  }
  std::vector<std::exception_ptr> errors(k);
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t begin = n * c / k, end = n * (c + 1) / k;
    pool.emplace_back([&, c, begin, end] {
      try {
        results[c] = body(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace wgame
