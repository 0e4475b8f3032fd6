#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "collatz/montecarlo.hpp"
#include "oracles.hpp"

using namespace collatz;

TEST(Generator, EngineIsTheStandardOne) {
  std::mt19937_64 e;
  e.discard(9999);
  EXPECT_EQ(e(), 9981545732273789042ULL);
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Generator, BitsAreReproducible) {
  FairBitStream a(12345), b(12345), c(12346);
  int differ = 0;
  for (int i = 0; i < 1000; ++i) {
    const unsigned x = a.next();
    ASSERT_EQ(x, b.next());
    differ += x != c.next();
  }
  EXPECT_GT(differ, 0);
}

TEST(SimulateRatio, BalancedStream) {
  const std::vector<unsigned> bits{0, 1, 0, 1};
  const auto s = ratio_from_bits(bits);
  EXPECT_EQ(s.xi, 1.0);
  EXPECT_EQ(s.zeros, 2u);
  EXPECT_EQ(s.ones, 2u);
  EXPECT_TRUE(std::isinf(ratio_from_counts(5, 0).xi));
  EXPECT_THROW(simulate_ratio(0, 1), PreconditionError);
}

TEST(SimulateRatio, GoldenSample) {
  const auto s = simulate_ratio(100, 2024);
  EXPECT_EQ(s.zeros + s.ones, 100u);
  EXPECT_EQ(s.ones, 55u);
  EXPECT_DOUBLE_EQ(s.xi, static_cast<double>(s.zeros) / static_cast<double>(s.ones));
}

TEST(SimulateRatio, BatchIndependentOfThreads) {
  const auto a = simulate_batch(500, 300, 7, 1);
  const auto b = simulate_batch(500, 300, 7, 4);
  ASSERT_EQ(a.size(), 300u);
  for (std::size_t j = 0; j < a.size(); ++j) {
    ASSERT_EQ(a[j].ones, b[j].ones);
    ASSERT_EQ(a[j].ones, simulate_ratio(500, sample_seed(7, j)).ones);
  }
}

TEST(SimulateRatio, LawOfLargeNumbers) {
  const auto batch = simulate_batch(10000, 1000, 1, 2);
  double sum = 0, sd = 0;
  for (const auto& s : batch) {
    sum += s.xi;
    sd += s.indicator_std;
  }
  EXPECT_LT(std::abs(sum / 1000 - 1.0), 0.02);
  EXPECT_LT(std::abs(sd / 1000 - 0.5), 0.01);
}

TEST(ConfidenceInterval, TextbookCase) {
  const auto ci = confidence_interval({100, 0.0, 1.0, 0.95});
  EXPECT_DOUBLE_EQ(ci.lo, -0.196);
  EXPECT_DOUBLE_EQ(ci.hi, 0.196);
  EXPECT_EQ(z_critical(0.98), 2.326);
  EXPECT_EQ(z_critical(0.99), 2.576);
  EXPECT_THROW(z_critical(0.9), PreconditionError);
  const auto point = confidence_interval({10, 3.5, 0.0, 0.99});
  EXPECT_EQ(point.lo, 3.5);
  EXPECT_EQ(point.hi, 3.5);
  EXPECT_THROW(confidence_interval({1, 0.0, 1.0, 0.95}), PreconditionError);
}

TEST(ConfidenceInterval, StudentT) {
  EXPECT_NEAR(t_critical(0.95, 13), 2.160369, 1e-6);
  EXPECT_NEAR(t_critical(0.99, 9), 3.249836, 1e-6);
  EXPECT_NEAR(t_critical(0.95, 100000), 1.95998, 1e-4);
  const auto ci = confidence_interval({14, 0.0, 1.0, 0.95}, IntervalMode::StudentT);
  EXPECT_NEAR(ci.hi, 2.160369 / std::sqrt(14.0), 1e-6);
}

TEST(ConfidenceInterval, WidthShrinksWithCount) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist(0.0, 1.0);
  double prev = 0;
  for (std::size_t n : {10u, 1000u, 100000u}) {
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    const auto s = describe(v);
    const auto ci = confidence_interval(s);
    const double width = ci.hi - ci.lo;
    EXPECT_NEAR(width, 2 * 1.96 * s.stddev / std::sqrt(static_cast<double>(n)), 1e-12);
    if (prev > 0) {
      EXPECT_LT(width, prev);
    }
    prev = width;
  }
}

TEST(ConfidenceInterval, Exponentiate) {
  const auto e = exponentiate_interval({2.0, 3.0});
  EXPECT_EQ(e.lo, 4.0);
  EXPECT_EQ(e.hi, 8.0);
  EXPECT_EQ(exponentiate_interval({1.5, 1.5}).lo, exponentiate_interval({1.5, 1.5}).hi);
  EXPECT_THROW(exponentiate_interval({3.0, 2.0}), PreconditionError);
  EXPECT_NEAR(std::log2(kPublishedIntervals[0].lo), 1.96174, 1e-5);
}

TEST(PublishedTable, ColumnsAreInternallyConsistent) {
  std::vector<double> col;
  for (const auto& row : kPublishedTable) {
    col.push_back(row.one_plus_xi);
    EXPECT_NEAR(row.one_plus_xi, 1 + row.xi, 1e-9);
    const auto counts = reconstruct_counts(row.xi);
    ASSERT_TRUE(counts) << row.sample;
    // The last column was computed from the unrounded ratio.
    EXPECT_NEAR(counts->two_pow_one_plus_xi(), row.two_pow, 5e-5) << row.sample;
    EXPECT_NEAR(counts->indicator_std, row.s, 6e-5) << row.sample;
  }
  const auto s = describe(col);
  EXPECT_NEAR(s.mean, 2.07885, 1e-5);
  EXPECT_NEAR(s.mean, 2.0789, 0.001);
}

TEST(DriftBound, WorkedValues) {
  const auto d = drift_bound(Natural(7), 4, Rational(11, 5));
  EXPECT_EQ(d.bound, Rational(11, 4));
  EXPECT_TRUE(drift_bound_holds(Natural(7), 4, Rational(11, 5), Natural(1)));
  for (std::uint64_t n = 0; n < 10; ++n) EXPECT_EQ(drift_bound(Natural(27), n, Rational(2)).bound, Rational(41, 2));
  EXPECT_THROW(drift_bound(Natural(7), 1, Rational(11, 5)), PreconditionError);
}

TEST(DriftBound, HoldsAlongOddTrajectories) {
  for (std::uint64_t x = 1; x <= 1001; x += 2) {
    const auto path = oracle::odd_path(x);
    std::uint64_t total = 0;
    for (std::size_t n = 0; n < path.k.size(); ++n) {
      total += path.k[n];
      const Rational mean = make_rational(natural_from_u64(total), natural_from_u64(n + 1));
      ASSERT_TRUE(drift_bound_holds(natural_from_u64(x), n, mean, natural_from_u64(path.values[n + 1])))
          << x << ' ' << n;
      ASSERT_GE(drift_bound(natural_from_u64(x), n, mean).bound, Rational(natural_from_u64(path.values[n + 1])));
    }
  }
  const auto p27 = oracle::odd_path(27, 3, 1, 11);
  std::uint64_t total = 0;
  for (unsigned k : p27.k) total += k;
  EXPECT_TRUE(drift_bound_holds(Natural(27), 10, make_rational(natural_from_u64(total), Natural(11)),
                                natural_from_u64(p27.values[11])));
}

TEST(StoppingProfile, WorkedValues) {
  const auto two = stopping_profile(Natural(2));
  EXPECT_EQ(two.stopping_time, 1u);
  EXPECT_EQ(two.total_stopping_time, 1u);
  EXPECT_DOUBLE_EQ(*two.ratio, 1.0 / std::log(2.0));

  const auto seven = stopping_profile(Natural(7));
  EXPECT_EQ(seven.total_stopping_time, 11u);
  EXPECT_EQ(seven.stopping_time, 7u);  // 7 11 17 26 13 20 10 5

  const auto one = stopping_profile(Natural(1));
  EXPECT_FALSE(one.stopping_time);
  EXPECT_EQ(one.total_stopping_time, 0u);
  EXPECT_FALSE(one.ratio);

  const auto big = stopping_profile(Natural(27));
  EXPECT_EQ(big.total_stopping_time, oracle::total_stopping_time(27));
  EXPECT_NEAR(*big.ratio, 70.0 / std::log(27.0), 1e-12);

  const auto cut = stopping_profile(Natural(27), 10);
  EXPECT_FALSE(cut.complete);
  EXPECT_FALSE(cut.total_stopping_time);
}

TEST(StoppingProfile, EvenStartsStopAtOnce) {
  for (std::uint64_t x = 2; x <= 2000; x += 2) ASSERT_EQ(stopping_profile(natural_from_u64(x)).stopping_time, 1u);
  for (std::uint64_t x = 3; x <= 2001; x += 2) {
    const auto p = stopping_profile(natural_from_u64(x));
    ASSERT_LE(*p.stopping_time, *p.total_stopping_time);
  }
}

TEST(RatioSurvey, SmallLimits) {
  const auto two = ratio_survey(2);
  EXPECT_EQ(two.argmax, 2u);
  EXPECT_DOUBLE_EQ(two.max_ratio, 1.0 / std::log(2.0));
  const auto hundred = ratio_survey(100, 2);
  EXPECT_EQ(hundred.argmax, 27u);
  EXPECT_DOUBLE_EQ(hundred.max_ratio, 70.0 / std::log(27.0));
  EXPECT_EQ(hundred.reference, 6.14316);
  EXPECT_THROW(ratio_survey(1), PreconditionError);
  EXPECT_NEAR(reference_crossover(100.0), 1.17371e7, 1e3);
}
