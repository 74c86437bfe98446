#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace smt {

// 0 means "use hardware concurrency".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, n) into contiguous chunks, runs body(begin, end) -> Acc on each,
// and merges the partials in chunk order. Acc must be default-constructible
// and support operator+=. With integer-valued accumulators the result does
// not depend on the thread count.
template <typename Acc, typename Body>
Acc parallel_reduce(std::uint64_t n, unsigned threads, Body body) {
  const std::uint64_t workers =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(resolve_threads(threads), n));
  if (workers == 1) return body(std::uint64_t{0}, n);

  std::vector<Acc> partial(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = n / workers;
    const std::uint64_t extra = n % workers;
    std::uint64_t begin = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
      pool.emplace_back([&partial, &body, w, begin, end] { partial[w] = body(begin, end); });
      begin = end;
    }
  }
  Acc total{};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace smt
