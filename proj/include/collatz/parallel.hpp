#ifndef COLLATZ_PARALLEL_HPP
#define COLLATZ_PARALLEL_HPP

// Range partitioning with a deterministic, order-preserving reduction: chunk
// boundaries depend only on the range and chunk size, and partial results are
// folded in chunk order whatever the thread count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "collatz/errors.hpp"

namespace collatz {

/// Closed interval [first, last] of positive integers.
struct Interval {
  std::uint64_t first = 1;
  std::uint64_t last = 1;

  std::uint64_t size() const { return last - first + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::vector<Interval> partition_by_size(Interval range, std::uint64_t chunk_size) {
  if (range.last < range.first) throw PreconditionError("empty interval");
  if (chunk_size == 0) throw PreconditionError("chunk size must be positive");
  std::vector<Interval> out;
  for (std::uint64_t lo = range.first;;) {
    const std::uint64_t room = range.last - lo;
    const std::uint64_t hi = room < chunk_size ? range.last : lo + chunk_size - 1;
    out.push_back({lo, hi});
    if (hi == range.last) break;
    lo = hi + 1;
  }
  return out;
}

/// Splits `range` into `parts` near-equal pieces (fewer if the range is short).
inline std::vector<Interval> partition_range(Interval range, std::uint64_t parts) {
  if (parts == 0) throw PreconditionError("need at least one part");
  parts = std::min(parts, range.size());
  const std::uint64_t base = range.size() / parts;
  const std::uint64_t extra = range.size() % parts;
  std::vector<Interval> out;
  std::uint64_t lo = range.first;
  for (std::uint64_t p = 0; p < parts; ++p) {
    const std::uint64_t len = base + (p < extra ? 1 : 0);
    out.push_back({lo, lo + len - 1});
    lo += len;
  }
  return out;
}

inline unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Maps every chunk on a pool of `threads` workers and returns the per-chunk
/// results in chunk order.
template <typename Fn>
auto parallel_map_chunks(const std::vector<Interval>& chunks, unsigned threads, Fn&& fn)
    -> std::vector<decltype(fn(chunks.front()))> {
  using Result = decltype(fn(chunks.front()));
  std::vector<std::optional<Result>> slots(chunks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= chunks.size()) return;
      try {
        slots[idx].emplace(fn(chunks[idx]));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks.size());
        return;
      }
    }
  };

  threads = std::max(1u, std::min<unsigned>(effective_threads(threads), static_cast<unsigned>(chunks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Result> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Left fold of per-chunk results in chunk order.
template <typename Fn, typename Merge>
auto parallel_reduce(Interval range, std::uint64_t chunk_size, unsigned threads, Fn&& fn, Merge&& merge) {
  auto parts = parallel_map_chunks(partition_by_size(range, chunk_size), threads, fn);
  auto acc = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) acc = merge(std::move(acc), std::move(parts[i]));
  return acc;
}

}  // namespace collatz

#endif  // COLLATZ_PARALLEL_HPP
