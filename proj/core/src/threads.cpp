// SPDX-License-Identifier: MIT
#include <cstdlib>
#include <string>

#include <tbb/global_control.h>
#include <tbb/parallel_for.h>

#include "dirzeta/parallel.hpp"

namespace dirzeta {

struct ThreadLimit::Impl {
  tbb::global_control control;
  explicit Impl(int n) : control(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(n)) {}
};

ThreadLimit::ThreadLimit(int max_threads) {
  if (max_threads < 1) throw DomainError("thread limit must be >= 1");
  impl_ = std::make_unique<Impl>(max_threads);
}
ThreadLimit::~ThreadLimit() = default;
ThreadLimit::ThreadLimit(ThreadLimit&&) noexcept = default;
ThreadLimit& ThreadLimit::operator=(ThreadLimit&&) noexcept = default;

std::unique_ptr<ThreadLimit> thread_limit_from_env() {
  const char* env = std::getenv("DIRZETA_THREADS");
  if (env == nullptr || *env == '\0') return nullptr;
  std::size_t pos = 0;
  int n = 0;
  try {
    n = std::stoi(env, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || env[pos] != '\0' || n < 1) {
    throw DomainError(std::string("DIRZETA_THREADS=\"") + env + "\" is not a positive integer");
  }
  return std::make_unique<ThreadLimit>(n);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  tbb::parallel_for(std::size_t{0}, n, [&](std::size_t i) { body(i); });
}

}  // namespace dirzeta
