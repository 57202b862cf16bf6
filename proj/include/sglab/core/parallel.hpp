#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "sglab/core/rng.hpp"

namespace sglab {

// Process-wide worker count. 0 means hardware concurrency.
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

namespace detail {
// Set while a thread runs pool work; nested maps then run inline.
inline thread_local bool in_pool = false;
}  // namespace detail

// Evaluates f(0..n-1) on the worker pool and returns results by index, so
// the caller's fold is independent of scheduling. The first exception (by
// task index) is rethrown.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1 || detail::in_pool) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto body = [&] {
    const bool outer = detail::in_pool;
    detail::in_pool = true;
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    detail::in_pool = outer;
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Monte Carlo driver: draw i gets its own stream derive_seed(seed, i), and
// draws are grouped into fixed blocks so the thread count never changes
// which numbers a draw sees.
template <class F>
auto parallel_draws(std::size_t n, std::uint64_t seed, F&& f)
    -> std::vector<decltype(f(std::size_t{}, std::declval<RandomStream&>()))> {
  using R = decltype(f(std::size_t{}, std::declval<RandomStream&>()));
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  auto parts = parallel_map(blocks, [&](std::size_t b) {
    std::vector<R> part;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    part.reserve(end - b * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      RandomStream rng(derive_seed(seed, i));
      part.push_back(f(i, rng));
    }
    return part;
  });
  std::vector<R> out;
  out.reserve(n);
  for (auto& p : parts)
    for (auto& v : p) out.push_back(std::move(v));
  return out;
}

}  // namespace sglab
