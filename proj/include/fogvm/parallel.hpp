// Copyright 2026 The fogvm Authors.
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

#ifndef FOGVM_PARALLEL_HPP
#define FOGVM_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fogvm {

/// Worker threads to use: FOGVM_WORKERS if set and positive, else the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs fn(task) for task in [0, tasks) on up to `workers` threads. Tasks are
/// handed out in order; the first exception is rethrown after all threads join.
template <typename Fn>
void parallel_for(int tasks, int workers, Fn&& fn) {
  if (workers <= 1 || tasks <= 1) {
    for (int t = 0; t < tasks; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (int t = next++; t < tasks; t = next++) {
      try {
        fn(t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const int n = workers < tasks ? workers : tasks;
  for (int i = 1; i < n; ++i) pool.emplace_back(body);
  body();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace fogvm

#endif  // FOGVM_PARALLEL_HPP
