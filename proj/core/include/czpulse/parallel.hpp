/* Copyright 2026 The Czpulse Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CZPULSE_PARALLEL_HPP_
#define CZPULSE_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace czpulse {

inline unsigned default_worker_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs f(i) for i in [0, count) on up to `workers` threads (0 = hardware
// concurrency). Tasks are claimed through an atomic counter, so callers must
// write results into pre-sized slots indexed by i; the visible result order
// is then independent of scheduling. The first exception thrown by any task
// is rethrown on the calling thread after all workers join.
inline void parallel_for(std::size_t count, unsigned workers,
                         const std::function<void(std::size_t)>& f) {
  if (workers == 0) workers = default_worker_count();
  if (count == 0) return;
  if (workers > count) workers = static_cast<unsigned>(count);

  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace czpulse

#endif  // CZPULSE_PARALLEL_HPP_
