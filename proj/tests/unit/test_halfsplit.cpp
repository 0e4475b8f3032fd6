#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "collatz/halfsplit.hpp"
#include "oracles.hpp"

using namespace collatz;

namespace {

// Elements of [1, 2^M] whose step n (1-based) increases, by plain iteration.
std::set<std::uint64_t> increasing_at(unsigned M, unsigned n) {
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 1; x <= (1u << M); ++x) {
    std::uint64_t v = x;
    for (unsigned s = 1; s < n; ++s) v = v % 2 == 0 ? v / 2 : (3 * v + 1) / 2;
    if (v % 2 == 1) out.insert(x);
  }
  return out;
}

}  // namespace

TEST(HalfSplit, GammaTwo) {
  const auto r = halfsplit_verify(2);
  ASSERT_EQ(r.per_step.size(), 3u);
  EXPECT_EQ(r.per_step[0], (StepTally{2, 2}));
  EXPECT_EQ(r.per_step[2], (StepTally{2, 2}));
  EXPECT_TRUE(r.in_range(1));
  EXPECT_FALSE(r.in_range(2));
  EXPECT_TRUE(r.exact_half_split());
  EXPECT_EQ(increasing_at(2, 1), (std::set<std::uint64_t>{1, 3}));
}

TEST(HalfSplit, GammaThree) {
  const auto r = halfsplit_verify(3);
  EXPECT_EQ(r.per_step[0], (StepTally{4, 4}));
  EXPECT_EQ(r.per_step[1], (StepTally{4, 4}));
  EXPECT_TRUE(r.exact_half_split());
  EXPECT_FALSE(r.in_range(3));
  // Step 2: the increasing elements are those whose first image is odd
  // (images 1, 5, 3, 11).
  EXPECT_EQ(increasing_at(3, 2), (std::set<std::uint64_t>{2, 3, 6, 7}));
  // Steps 3 and 4 lie outside the guaranteed range; step 3 still balances,
  // step 4 does not.
  EXPECT_EQ(r.per_step[2], (StepTally{4, 4}));
  EXPECT_EQ(r.per_step[3], (StepTally{2, 6}));
}

TEST(HalfSplit, ExactForAllSmallM) {
  for (unsigned M = 1; M <= 18; ++M) {
    const auto r = halfsplit_verify(M);
    ASSERT_TRUE(r.exact_half_split()) << M;
    ASSERT_EQ(r.covered, 1u << M);
    for (const auto& t : r.per_step) ASSERT_EQ(t.total(), 1u << M);
  }
}

TEST(HalfSplit, ClassModeMatchesDirect) {
  for (unsigned M = 1; M <= 14; ++M) ASSERT_EQ(halfsplit_by_class(M), halfsplit_verify(M)) << M;
}

TEST(HalfSplit, MergeOfRandomPartitionsEqualsFullRange) {
  std::mt19937_64 rng(77);
  for (unsigned M : {4u, 9u, 12u}) {
    const auto full = halfsplit_verify(M);
    for (int trial = 0; trial < 5; ++trial) {
      const std::uint64_t n = std::uint64_t{1} << M;
      std::vector<std::uint64_t> cuts{rng() % n + 1, rng() % n + 1, rng() % n + 1};
      std::sort(cuts.begin(), cuts.end());
      std::vector<Interval> parts;
      std::uint64_t lo = 1;
      for (std::uint64_t c : cuts) {
        if (c >= lo && c < n) {
          parts.push_back({lo, c});
          lo = c + 1;
        }
      }
      parts.push_back({lo, n});
      std::shuffle(parts.begin(), parts.end(), rng);
      HalfSplitReport acc = halfsplit_verify(M, parts.front());
      for (std::size_t i = 1; i < parts.size(); ++i) acc = merge(acc, halfsplit_verify(M, parts[i]));
      ASSERT_EQ(acc, full);
    }
  }
}

TEST(HalfSplit, ThreadCountDoesNotChangeReport) {
  EXPECT_EQ(halfsplit_verify(16, std::nullopt, 1), halfsplit_verify(16, std::nullopt, 4));
}

TEST(HalfSplit, Limits) {
  EXPECT_THROW(halfsplit_verify(0), PreconditionError);
  EXPECT_THROW(halfsplit_verify(3, Interval{0, 4}), PreconditionError);
  EXPECT_THROW(halfsplit_verify(3, Interval{1, 9}), PreconditionError);
  HalfSplitLimits tight;
  tight.max_direct_log2 = 8;
  EXPECT_THROW(halfsplit_verify(10, std::nullopt, 1, tight), ResourceError);
  // A subrange within budget is still allowed for the same M.
  EXPECT_NO_THROW(halfsplit_verify(10, Interval{1, 256}, 1, tight));
  tight.max_class_M = 5;
  EXPECT_THROW(halfsplit_by_class(6, tight), ResourceError);
  EXPECT_THROW(halfsplit_verify(63), ResourceError);
  EXPECT_THROW(merge(halfsplit_verify(3), halfsplit_verify(4)), PreconditionError);
}

TEST(ClassSplit, FirstStepIsParity) {
  const auto classes = class_split(1, 2);
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0].kind, StepKind::Decrease);
  EXPECT_EQ(classes[1].kind, StepKind::Increase);
}

TEST(ClassSplit, SecondStepModFour) {
  // Brute force: step 2 kind of i = 0..3 from T(i) parity with T(0) = 0.
  // T(0)=0 even, T(1)=2 even, T(2)=1 odd, T(3)=5 odd.
  const auto classes = class_split(2, 3);
  std::vector<StepKind> kinds;
  for (const auto& c : classes) kinds.push_back(c.kind);
  EXPECT_EQ(kinds, (std::vector<StepKind>{StepKind::Decrease, StepKind::Decrease, StepKind::Increase,
                                          StepKind::Increase}));
}

TEST(ClassSplit, BalancedCardinalities) {
  for (unsigned n = 1; n <= 12; ++n) {
    const auto classes = class_split(n, n + 1);
    const auto inc = std::count_if(classes.begin(), classes.end(),
                                   [](const ClassKind& c) { return c.kind == StepKind::Increase; });
    ASSERT_EQ(static_cast<std::uint64_t>(inc), std::uint64_t{1} << (n - 1)) << n;
    ASSERT_EQ(classes.size() - inc, std::uint64_t{1} << (n - 1)) << n;
  }
  EXPECT_THROW(class_split(3, 3), PreconditionError);
  EXPECT_THROW(class_split(0, 3), PreconditionError);
}

TEST(ClassSplit, KindDependsOnlyOnResidue) {
  // For every x <= 2^14 and n <= 10 the step-n kind of x equals the kind of
  // its class x mod 2^n.
  for (unsigned n = 1; n <= 10; ++n) {
    const auto classes = class_kinds(n);
    for (std::uint64_t x = 1; x <= (1u << 14); ++x) {
      std::uint64_t v = x;
      for (unsigned s = 1; s < n; ++s) v = v % 2 == 0 ? v / 2 : (3 * v + 1) / 2;
      const StepKind direct = classify(v % 2 == 1);
      ASSERT_EQ(classes[x % (1u << n)].kind, direct) << "x=" << x << " n=" << n;
    }
  }
}

TEST(ClassSplit, LiftsTakeOppositeKinds) {
  for (unsigned n = 1; n <= 14; ++n) ASSERT_TRUE(lift_opposition_mismatches(n).empty()) << n;
}
