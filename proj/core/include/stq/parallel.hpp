#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stq {

/// Splits [0, total) into fixed-size chunks, evaluates fn(begin, end) for
/// each chunk on up to `workers` threads and returns the partial results in
/// chunk order. Since chunk boundaries do not depend on the worker count,
/// merging the returned vector front to back gives identical floating-point
/// results for any number of workers.
template <class Partial, class Fn>
std::vector<Partial> run_chunks(std::size_t total, std::size_t chunk, unsigned workers, Fn fn) {
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (total + chunk - 1) / chunk;
  std::vector<Partial> out(chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::size_t begin = c * chunk;
        out[c] = fn(begin, std::min(total, begin + chunk));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace stq
