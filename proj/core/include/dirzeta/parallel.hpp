// SPDX-License-Identifier: MIT
// Thin wrappers over the task scheduler so that public headers stay free of it.
#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "dirzeta/rational.hpp"

namespace dirzeta {

/// Caps scheduler parallelism while alive.
class ThreadLimit {
 public:
  explicit ThreadLimit(int max_threads);
  ~ThreadLimit();
  ThreadLimit(ThreadLimit&&) noexcept;
  ThreadLimit& operator=(ThreadLimit&&) noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reads DIRZETA_THREADS; null when unset. Throws DomainError on a bad value.
std::unique_ptr<ThreadLimit> thread_limit_from_env();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dirzeta
