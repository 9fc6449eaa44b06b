/* Copyright 2026 The Sigforge Authors. All Rights Reserved.

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

#ifndef SIGFORGE_THREAD_POOL_HPP_
#define SIGFORGE_THREAD_POOL_HPP_

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace sigforge {

// Fixed set of worker threads. parallel_for may be called from several
// threads at once; the calling thread works on its own loop too.
class ThreadPool {
 public:
  // `workers` counts the caller, so workers - 1 threads are started.
  explicit ThreadPool(std::size_t workers);
  ~ThreadPool();
  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  std::size_t workers() const noexcept { return threads_.size() + 1; }

  // Runs fn(i) for every i in [0, count). Rethrows the first exception
  // after every started call has returned.
  void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

 private:
  void run();

  std::vector<std::thread> threads_;
  std::deque<std::function<void()>> queue_;
  std::mutex mutex_;
  std::condition_variable cv_;
  bool stopping_ = false;
};

// Worker count from an explicit request, else SIGFORGE_WORKERS, else the
// hardware concurrency. Throws InvalidArgument on a zero or malformed value.
std::size_t resolve_workers(std::optional<std::size_t> requested);

}  // namespace sigforge

#endif  // SIGFORGE_THREAD_POOL_HPP_
