#ifndef COLLATZ_HALFSPLIT_HPP
#define COLLATZ_HALFSPLIT_HPP

// Step-kind tallies over Gamma_M = {1, ..., 2^M}: at each step n <= M - 1
// exactly half of the elements increase and half decrease.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatz/dynamics.hpp"
#include "collatz/errors.hpp"
#include "collatz/identities.hpp"
#include "collatz/parallel.hpp"

namespace collatz {

struct StepTally {
  std::uint64_t increase = 0;
  std::uint64_t decrease = 0;

  std::uint64_t total() const { return increase + decrease; }
  friend bool operator==(const StepTally&, const StepTally&) = default;
};

struct HalfSplitReport {
  unsigned M = 0;
  Interval subrange;         // hull of the covered elements
  std::uint64_t covered = 0; // number of elements tallied
  std::vector<StepTally> per_step;  // per_step[n - 1] is step n, n = 1..M+1

  /// Steps beyond M - 1 are tallied but fall outside the half-split range.
  bool in_range(unsigned step) const { return step >= 1 && step + 1 <= M; }

  bool full_range() const { return covered == (std::uint64_t{1} << M); }

  /// Every in-range step splits the full range exactly in half.
  bool exact_half_split() const {
    if (!full_range()) return false;
    const std::uint64_t half = std::uint64_t{1} << (M - 1);
    for (unsigned n = 1; n + 1 <= M; ++n)
      if (per_step[n - 1].increase != half || per_step[n - 1].decrease != half) return false;
    return true;
  }

  friend bool operator==(const HalfSplitReport&, const HalfSplitReport&) = default;
};

/// Component-wise sum of reports over disjoint element sets.
inline HalfSplitReport merge(HalfSplitReport a, const HalfSplitReport& b) {
  if (a.M != b.M) throw PreconditionError("cannot merge half-split reports for different M");
  if (a.covered == 0) return b;
  if (b.covered == 0) return a;
  for (std::size_t n = 0; n < a.per_step.size(); ++n) {
    a.per_step[n].increase += b.per_step[n].increase;
    a.per_step[n].decrease += b.per_step[n].decrease;
  }
  a.covered += b.covered;
  a.subrange.first = std::min(a.subrange.first, b.subrange.first);
  a.subrange.last = std::max(a.subrange.last, b.subrange.last);
  return a;
}

struct HalfSplitLimits {
  unsigned max_M = 62;
  /// Largest log2 of the number of elements tallied one by one.
  unsigned max_direct_log2 = 24;
  /// Largest M handled through residue classes.
  unsigned max_class_M = 26;
};

namespace detail {

/// Kinds of the first `steps` shortcut steps from x (x >= 1), appended to
/// tallies. Uses machine words and falls back to GMP on overflow.
inline void tally_steps(std::uint64_t x, unsigned steps, std::vector<StepTally>& tallies) {
  unsigned s = 0;
  for (; s < steps; ++s) {
    auto& t = tallies[s];
    (x & 1u ? t.increase : t.decrease) += 1;
    auto next = checked_step_general(x);
    if (!next) break;
    x = *next;
  }
  if (s == steps) return;
  Natural big = step_general(natural_from_u64(x)).value;
  for (++s; s < steps; ++s) {
    auto& t = tallies[s];
    (is_odd(big) ? t.increase : t.decrease) += 1;
    big = step_general(big).value;
  }
}

inline HalfSplitReport empty_report(unsigned M) {
  HalfSplitReport r;
  r.M = M;
  r.per_step.assign(M + 1, StepTally{});
  return r;
}

/// Parity of T^{steps}(i) under the shortcut map with T(0) = 0.
inline bool residue_lineage_odd(std::uint64_t i, unsigned steps) {
  if (i == 0) return false;
  std::uint64_t x = i;
  for (unsigned s = 0; s < steps; ++s) {
    auto next = checked_step_general(x);
    if (!next) {
      Natural big = step_general(natural_from_u64(x)).value;
      for (++s; s < steps; ++s) big = step_general(big).value;
      return is_odd(big);
    }
    x = *next;
  }
  return (x & 1u) != 0;
}

}  // namespace detail

/// Direct per-element tally over `subrange` (default: all of [1, 2^M]) for
/// steps 1..M+1.
inline HalfSplitReport halfsplit_verify(unsigned M, std::optional<Interval> subrange = std::nullopt,
                                        unsigned threads = 1, const HalfSplitLimits& limits = {}) {
  if (M < 1) throw PreconditionError("M must be at least 1");
  if (M > limits.max_M) throw ResourceError("M = " + std::to_string(M) + " exceeds the supported maximum " +
                                            std::to_string(limits.max_M));
  const Interval full{1, std::uint64_t{1} << M};
  const Interval range = subrange.value_or(full);
  if (range.first < 1 || range.last > full.last || range.last < range.first)
    throw PreconditionError("subrange must lie inside [1, 2^M]");
  if (range.size() > (std::uint64_t{1} << limits.max_direct_log2))
    throw ResourceError("direct tally of " + std::to_string(range.size()) + " elements exceeds the budget of 2^" +
                        std::to_string(limits.max_direct_log2) +
                        "; split [1, 2^M] into subranges and merge the reports, or use the class mode");

  constexpr std::uint64_t kChunk = 1u << 14;
  return parallel_reduce(
      range, kChunk, threads,
      [M](Interval chunk) {
        HalfSplitReport r = detail::empty_report(M);
        for (std::uint64_t x = chunk.first;; ++x) {
          detail::tally_steps(x, M + 1, r.per_step);
          if (x == chunk.last) break;
        }
        r.subrange = chunk;
        r.covered = chunk.size();
        return r;
      },
      [](HalfSplitReport a, HalfSplitReport b) { return merge(std::move(a), b); });
}

struct ClassKind {
  ResidueClass cls;
  StepKind kind;
};

/// Kind of step n for every residue class i mod 2^n. The kind is Increase
/// iff T^{n-1}(i) is odd (with T(0) = 0).
inline std::vector<ClassKind> class_kinds(unsigned n) {
  if (n < 1 || n > 40) throw PreconditionError("class step must satisfy 1 <= n <= 40");
  std::vector<ClassKind> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i)
    out.push_back({ResidueClass{n, i}, classify(detail::residue_lineage_odd(i, n - 1))});
  return out;
}

inline std::vector<ClassKind> class_split(unsigned n, unsigned M) {
  if (n < 1 || n + 1 > M) throw PreconditionError("class_split needs 1 <= n <= M - 1");
  return class_kinds(n);
}

/// Tally over all of [1, 2^M] through residue classes: each class mod 2^n
/// holds 2^{M-n} elements of the range.
inline HalfSplitReport halfsplit_by_class(unsigned M, const HalfSplitLimits& limits = {}) {
  if (M < 1) throw PreconditionError("M must be at least 1");
  if (M > limits.max_class_M)
    throw ResourceError("class mode for M = " + std::to_string(M) + " exceeds the budget M <= " +
                        std::to_string(limits.max_class_M));
  HalfSplitReport r = detail::empty_report(M);
  r.subrange = {1, std::uint64_t{1} << M};
  r.covered = r.subrange.size();
  for (unsigned n = 1; n <= M; ++n) {
    const std::uint64_t weight = std::uint64_t{1} << (M - n);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i)
      (detail::residue_lineage_odd(i, n - 1) ? r.per_step[n - 1].increase : r.per_step[n - 1].decrease) += weight;
  }
  // Step M + 1: classes mod 2^{M+1} meet the range in at most one element,
  // so count the elements themselves.
  for (std::uint64_t x = 1; x <= r.subrange.last; ++x)
    (detail::residue_lineage_odd(x, M) ? r.per_step[M].increase : r.per_step[M].decrease) += 1;
  return r;
}

/// Residues i mod 2^n whose two lifts i and i + 2^n mod 2^{n+1} do not take
/// opposite kinds at step n + 1. The class argument for the half split
/// relies on this list being empty.
inline std::vector<std::uint64_t> lift_opposition_mismatches(unsigned n) {
  if (n < 1 || n > 30) throw PreconditionError("lift check needs 1 <= n <= 30");
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    const bool low = detail::residue_lineage_odd(i, n);
    const bool high = detail::residue_lineage_odd(i + (std::uint64_t{1} << n), n);
    if (low == high) out.push_back(i);
  }
  return out;
}

}  // namespace collatz

#endif  // COLLATZ_HALFSPLIT_HPP
