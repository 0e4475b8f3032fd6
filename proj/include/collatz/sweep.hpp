#ifndef COLLATZ_SWEEP_HPP
#define COLLATZ_SWEEP_HPP

// Range verification that every x <= limit reaches 1 under the shortcut map,
// with total stopping times, excursions and the total-time/ln(x) ratio.
//
// Each x is iterated only until it first drops below itself (its stopping
// time). Its total stopping time is then the stopping time plus the total of
// the value it landed on, which is smaller and therefore already known when
// the range is folded in ascending order. Chunks are mapped in parallel and
// folded in order, so the result does not depend on the thread count.

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "collatz/dynamics.hpp"
#include "collatz/errors.hpp"
#include "collatz/natural.hpp"
#include "collatz/parallel.hpp"

namespace collatz {

struct SweepOptions {
  std::uint64_t max_steps = kDefaultMaxSteps;
  unsigned threads = 1;
  std::uint64_t chunk_size = std::uint64_t{1} << 16;
  /// Memory budget: 4 bytes per element.
  std::uint64_t max_limit = std::uint64_t{1} << 28;
  /// Keep the per-x total stopping times in the report (index x).
  bool keep_totals = false;
};

struct SweepReport {
  std::uint64_t limit = 0;
  std::uint64_t verified_count = 0;
  /// Values not confirmed to reach 1 within max_steps.
  std::vector<std::uint64_t> failures;

  std::uint64_t max_total_stopping_time = 0;
  std::uint64_t argmax_total_stopping_time = 1;
  std::uint64_t max_stopping_time = 0;
  std::uint64_t argmax_stopping_time = 1;
  Natural max_excursion = 1;
  std::uint64_t argmax_excursion = 1;
  /// max of total_stopping_time(x) / ln(x) over 2 <= x <= limit.
  double max_ratio = 0.0;
  std::uint64_t argmax_ratio = 0;

  std::vector<std::uint32_t> totals;
};

inline constexpr std::uint32_t kUnverified = std::numeric_limits<std::uint32_t>::max();

namespace detail {

struct StoppingRecord {
  std::uint32_t stopping_time = 0;  // kUnverified if not reached within max_steps
  std::uint32_t landing = 0;        // T^{stopping_time}(x) < x
};

struct ChunkResult {
  Interval range;
  std::vector<StoppingRecord> records;
  std::uint64_t peak_x = 0;
  Natural peak = 0;
};

/// Iterates x until it drops below x. Peak is the largest value seen.
inline StoppingRecord stopping_run(std::uint64_t x, std::uint64_t max_steps, Natural& peak_out) {
  StoppingRecord rec;
  std::uint64_t v = x;
  std::uint64_t peak = x;
  std::uint64_t steps = 0;
  while (v >= x) {
    if (steps >= max_steps) {
      rec.stopping_time = kUnverified;
      peak_out = natural_from_u64(peak);
      return rec;
    }
    auto next = checked_step_general(v);
    if (!next) {
      // Leaves 64-bit range: continue exactly.
      Natural big = natural_from_u64(v);
      Natural big_peak = natural_from_u64(peak);
      const Natural bound = natural_from_u64(x);
      while (big >= bound) {
        if (steps >= max_steps) {
          rec.stopping_time = kUnverified;
          peak_out = big_peak;
          return rec;
        }
        big = step_general(big).value;
        ++steps;
        if (big > big_peak) big_peak = big;
      }
      rec.stopping_time = static_cast<std::uint32_t>(steps);
      rec.landing = static_cast<std::uint32_t>(to_u64(big));
      peak_out = big_peak;
      return rec;
    }
    v = *next;
    ++steps;
    if (v > peak) peak = v;
  }
  rec.stopping_time = static_cast<std::uint32_t>(steps);
  rec.landing = static_cast<std::uint32_t>(v);
  peak_out = natural_from_u64(peak);
  return rec;
}

inline ChunkResult stopping_chunk(Interval range, std::uint64_t max_steps) {
  ChunkResult out;
  out.range = range;
  out.records.reserve(range.size());
  Natural peak;
  for (std::uint64_t x = range.first;; ++x) {
    if (x == 1) {
      out.records.push_back({0, 0});
      peak = 1;
    } else {
      out.records.push_back(stopping_run(x, max_steps, peak));
    }
    if (out.peak_x == 0 || peak > out.peak) {
      out.peak = peak;
      out.peak_x = x;
    }
    if (x == range.last) break;
  }
  return out;
}

}  // namespace detail

inline SweepReport sweep_to_one(std::uint64_t limit, const SweepOptions& options = {}) {
  if (limit < 1) throw PreconditionError("sweep limit must be at least 1");
  if (limit > options.max_limit)
    throw ResourceError("sweep limit " + std::to_string(limit) + " exceeds the memory budget of " +
                        std::to_string(options.max_limit) + " values; sweep in smaller ranges");
  if (options.max_steps >= kUnverified) throw PreconditionError("max_steps must be below 2^32 - 1");

  SweepReport report;
  report.limit = limit;
  std::vector<std::uint32_t> totals(limit + 1, kUnverified);

  const auto chunks = partition_by_size({1, limit}, options.chunk_size);
  const std::size_t wave = std::max<std::size_t>(1, 4 * effective_threads(options.threads));
  bool have_excursion = false;

  for (std::size_t begin = 0; begin < chunks.size(); begin += wave) {
    const std::size_t end = std::min(chunks.size(), begin + wave);
    const std::vector<Interval> batch(chunks.begin() + begin, chunks.begin() + end);
    auto results = parallel_map_chunks(batch, options.threads, [&](Interval c) {
      return detail::stopping_chunk(c, options.max_steps);
    });

    for (auto& chunk : results) {
      if (!have_excursion || chunk.peak > report.max_excursion) {
        report.max_excursion = chunk.peak;
        report.argmax_excursion = chunk.peak_x;
        have_excursion = true;
      }
      std::uint64_t x = chunk.range.first;
      for (const auto& rec : chunk.records) {
        if (x == 1) {
          totals[1] = 0;
        } else if (rec.stopping_time != kUnverified && totals[rec.landing] != kUnverified) {
          const std::uint64_t total = std::uint64_t{rec.stopping_time} + totals[rec.landing];
          if (total <= options.max_steps) totals[x] = static_cast<std::uint32_t>(total);
        }
        if (totals[x] == kUnverified) {
          report.failures.push_back(x);
        } else {
          ++report.verified_count;
          if (totals[x] > report.max_total_stopping_time) {
            report.max_total_stopping_time = totals[x];
            report.argmax_total_stopping_time = x;
          }
          if (x >= 2) {
            const double ratio = static_cast<double>(totals[x]) / std::log(static_cast<double>(x));
            if (report.argmax_ratio == 0 || ratio > report.max_ratio) {
              report.max_ratio = ratio;
              report.argmax_ratio = x;
            }
          }
        }
        if (x >= 2 && rec.stopping_time != kUnverified && rec.stopping_time > report.max_stopping_time) {
          report.max_stopping_time = rec.stopping_time;
          report.argmax_stopping_time = x;
        }
        ++x;
      }
    }
  }
  if (options.keep_totals) report.totals = std::move(totals);
  return report;
}

}  // namespace collatz

#endif  // COLLATZ_SWEEP_HPP
