#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fraclap {

/// Calls body(i) for i in [begin, end), split into contiguous blocks over the
/// hardware threads when enabled. The first exception thrown is rethrown.
template <class Body>
void parallel_for(long begin, long end, bool enabled, Body&& body) {
  const long count = end - begin;
  if (count <= 0) return;
  const long workers =
      enabled ? std::min<long>(count, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers == 1) {
    for (long i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  const long block = (count + workers - 1) / workers;
  for (long w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const long lo = begin + w * block;
        const long hi = std::min(end, lo + block);
        for (long i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace fraclap
