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

#include "sigforge/thread_pool.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <memory>
#include <string>
#include <string_view>

#include "sigforge/error.hpp"

namespace sigforge {
namespace {

struct Job {
  std::size_t count = 0;
  const std::function<void(std::size_t)>* fn = nullptr;
  std::atomic<std::size_t> next{0};
  std::size_t finished = 0;
  std::exception_ptr error;
  std::mutex mutex;
  std::condition_variable done;

  void work() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        (*fn)(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
      }
      std::lock_guard lock(mutex);
      if (++finished == count) done.notify_all();
    }
  }
};

}  // namespace

ThreadPool::ThreadPool(std::size_t workers) {
  if (workers == 0) throw InvalidArgument("ThreadPool needs at least one worker");
  for (std::size_t i = 1; i < workers; ++i) threads_.emplace_back([this] { run(); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  cv_.notify_all();
  for (std::thread& t : threads_) t.join();
}

void ThreadPool::run() {
  for (;;) {
    std::function<void()> task;
    {
      std::unique_lock lock(mutex_);
      cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) return;
      task = std::move(queue_.front());
      queue_.pop_front();
    }
    task();
  }
}

void ThreadPool::parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  auto job = std::make_shared<Job>();
  job->count = count;
  job->fn = &fn;
  const std::size_t helpers = std::min(threads_.size(), count - 1);
  {
    std::lock_guard lock(mutex_);
    for (std::size_t h = 0; h < helpers; ++h) queue_.emplace_back([job] { job->work(); });
  }
  cv_.notify_all();
  job->work();
  std::unique_lock lock(job->mutex);
  job->done.wait(lock, [&] { return job->finished == job->count; });
  if (job->error) std::rethrow_exception(job->error);
}

std::size_t resolve_workers(std::optional<std::size_t> requested) {
  if (requested) {
    if (*requested == 0) throw InvalidArgument("worker count must be positive");
    return *requested;
  }
  if (const char* env = std::getenv("SIGFORGE_WORKERS"); env != nullptr && *env != '\0') {
    const std::string_view text(env);
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || value == 0) {
      throw InvalidArgument("SIGFORGE_WORKERS must be a positive integer");
    }
    return value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace sigforge
