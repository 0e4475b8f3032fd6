#include <gtest/gtest.h>

#include <cmath>

#include "collatz/sweep.hpp"
#include "oracles.hpp"

using namespace collatz;

TEST(Sweep, SingleElement) {
  const auto r = sweep_to_one(1);
  EXPECT_EQ(r.verified_count, 1u);
  EXPECT_TRUE(r.failures.empty());
  EXPECT_EQ(r.max_total_stopping_time, 0u);
  EXPECT_EQ(r.argmax_ratio, 0u);
}

TEST(Sweep, TenThousand) {
  SweepOptions opts;
  opts.max_steps = 10000;
  const auto r = sweep_to_one(10000, opts);
  EXPECT_EQ(r.verified_count, 10000u);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Sweep, FastPathMatchesExactTrajectories) {
  SweepOptions opts;
  opts.keep_totals = true;
  opts.chunk_size = 777;  // uneven chunks
  const auto r = sweep_to_one(20000, opts);
  std::uint64_t best = 0, best_x = 1;
  Natural best_peak = 1;
  std::uint64_t peak_x = 1;
  for (std::uint64_t x = 1; x <= 20000; ++x) {
    const Trajectory t = trajectory_general(natural_from_u64(x));
    ASSERT_EQ(r.totals[x], t.step_count()) << x;
    ASSERT_EQ(r.totals[x], oracle::total_stopping_time(x));
    if (t.step_count() > best) {
      best = t.step_count();
      best_x = x;
    }
    for (const auto& v : t.values)
      if (v > best_peak) {
        best_peak = v;
        peak_x = x;
      }
  }
  EXPECT_EQ(r.max_total_stopping_time, best);
  EXPECT_EQ(r.argmax_total_stopping_time, best_x);
  EXPECT_EQ(r.max_excursion, best_peak);
  EXPECT_EQ(r.argmax_excursion, peak_x);
}

TEST(Sweep, RatioMaximumByExhaustiveScan) {
  double best = 0;
  std::uint64_t arg = 0;
  for (std::uint64_t x = 2; x <= 100; ++x) {
    const double ratio = static_cast<double>(oracle::total_stopping_time(x)) / std::log(static_cast<double>(x));
    if (ratio > best) {
      best = ratio;
      arg = x;
    }
  }
  const auto r = sweep_to_one(100);
  EXPECT_EQ(r.argmax_ratio, arg);
  EXPECT_DOUBLE_EQ(r.max_ratio, best);
  EXPECT_EQ(arg, 27u);
  EXPECT_EQ(r.max_total_stopping_time, 75u);
  EXPECT_EQ(r.argmax_total_stopping_time, 97u);
}

TEST(Sweep, ThreadAndChunkIndependence) {
  SweepOptions a;
  a.threads = 1;
  SweepOptions b;
  b.threads = 4;
  b.chunk_size = 1000;
  const auto ra = sweep_to_one(300000, a);
  const auto rb = sweep_to_one(300000, b);
  EXPECT_EQ(ra.verified_count, rb.verified_count);
  EXPECT_EQ(ra.max_total_stopping_time, rb.max_total_stopping_time);
  EXPECT_EQ(ra.argmax_total_stopping_time, rb.argmax_total_stopping_time);
  EXPECT_EQ(ra.max_excursion, rb.max_excursion);
  EXPECT_EQ(ra.argmax_excursion, rb.argmax_excursion);
  EXPECT_EQ(ra.max_ratio, rb.max_ratio);
  EXPECT_EQ(ra.argmax_ratio, rb.argmax_ratio);
  EXPECT_EQ(ra.max_stopping_time, rb.max_stopping_time);
}

TEST(Sweep, TightStepBudgetReportsFailuresAsData) {
  SweepOptions opts;
  opts.max_steps = 20;
  const auto r = sweep_to_one(100, opts);
  EXPECT_FALSE(r.failures.empty());
  EXPECT_EQ(r.verified_count + r.failures.size(), 100u);
  for (std::uint64_t x : r.failures) EXPECT_GT(oracle::total_stopping_time(x), 20u) << x;
  EXPECT_EQ(std::count(r.failures.begin(), r.failures.end(), 27u), 1);
}

TEST(Sweep, Limits) {
  EXPECT_THROW(sweep_to_one(0), PreconditionError);
  SweepOptions opts;
  opts.max_limit = 1000;
  EXPECT_THROW(sweep_to_one(1001, opts), ResourceError);
}
