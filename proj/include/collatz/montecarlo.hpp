#ifndef COLLATZ_MONTECARLO_HPP
#define COLLATZ_MONTECARLO_HPP

// Seeded reproduction of the zero/one ratio experiment, normal and Student-t
// confidence intervals, the x_{n+1} drift bound and stopping-time profiles.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "collatz/dynamics.hpp"
#include "collatz/errors.hpp"
#include "collatz/natural.hpp"
#include "collatz/sweep.hpp"

namespace collatz {

// ---------------------------------------------------------------------------
// Generator

/// Stream identifier written into every stochastic output. Bump it if the
/// generator or the bit extraction ever changes; golden files depend on it.
inline constexpr std::string_view kGeneratorId = "mt19937_64-msb/v1";

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Fair bits: the most significant bit of each std::mt19937_64 output. The
/// engine's output sequence is fixed by the C++ standard.
class FairBitStream {
 public:
  explicit FairBitStream(std::uint64_t seed) : engine_(seed) {}
  unsigned next() { return static_cast<unsigned>(engine_() >> 63); }

 private:
  std::mt19937_64 engine_;
};

/// Seed of sample `index` in a batch started from `base_seed`.
inline constexpr std::uint64_t sample_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(base_seed + index);
}

// ---------------------------------------------------------------------------
// Ratio experiment

struct RatioSample {
  std::uint64_t length = 0;
  std::uint64_t zeros = 0;  // decrements D_n
  std::uint64_t ones = 0;   // increments n
  /// zeros / ones; +infinity when ones = 0.
  double xi = 0.0;
  /// Sample standard deviation (n - 1 denominator) of the 0/1 indicators.
  double indicator_std = 0.0;

  double one_plus_xi() const { return 1.0 + xi; }
  double two_pow_one_plus_xi() const { return std::exp2(1.0 + xi); }
};

/// Statistics of a 0/1 sequence given its counts.
inline RatioSample ratio_from_counts(std::uint64_t zeros, std::uint64_t ones) {
  RatioSample s;
  s.length = zeros + ones;
  s.zeros = zeros;
  s.ones = ones;
  s.xi = ones == 0 ? std::numeric_limits<double>::infinity()
                   : static_cast<double>(zeros) / static_cast<double>(ones);
  if (s.length >= 2) {
    const double n = static_cast<double>(s.length);
    const double p = static_cast<double>(ones) / n;
    s.indicator_std = std::sqrt(n * p * (1.0 - p) / (n - 1.0));
  }
  return s;
}

inline RatioSample ratio_from_bits(std::span<const unsigned> bits) {
  std::uint64_t ones = 0;
  for (unsigned b : bits) ones += b != 0;
  return ratio_from_counts(bits.size() - ones, ones);
}

inline RatioSample simulate_ratio(std::uint64_t length, std::uint64_t seed) {
  if (length < 1) throw PreconditionError("sample length must be at least 1");
  FairBitStream bits(seed);
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < length; ++i) ones += bits.next();
  return ratio_from_counts(length - ones, ones);
}

/// `samples` independent runs; sample j uses sample_seed(base_seed, j).
inline std::vector<RatioSample> simulate_batch(std::uint64_t length, std::uint64_t samples, std::uint64_t base_seed,
                                               unsigned threads = 1) {
  if (samples == 0) return {};
  auto parts = parallel_map_chunks(partition_by_size({0 + 1, samples}, 64), threads, [&](Interval c) {
    std::vector<RatioSample> out;
    for (std::uint64_t j = c.first; j <= c.last; ++j) out.push_back(simulate_ratio(length, sample_seed(base_seed, j - 1)));
    return out;
  });
  std::vector<RatioSample> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sample statistics and intervals

enum class IntervalMode { Normal, StudentT };

constexpr std::string_view to_string(IntervalMode m) { return m == IntervalMode::Normal ? "normal" : "student_t"; }

struct SampleStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // n - 1 denominator
  double level = 0.95;
};

inline SampleStats describe(std::span<const double> values, double level = 0.95) {
  SampleStats s;
  s.count = values.size();
  s.level = level;
  if (values.empty()) return s;
  // Two-pass for accuracy; sequential order keeps the result reproducible.
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

/// Two-sided normal critical values for the supported levels.
inline double z_critical(double level) {
  if (level == 0.95) return 1.960;
  if (level == 0.98) return 2.326;
  if (level == 0.99) return 2.576;
  throw PreconditionError("unsupported confidence level (use 0.95, 0.98 or 0.99)");
}

inline double t_critical(double level, std::uint64_t degrees_of_freedom) {
  z_critical(level);  // same supported set
  if (degrees_of_freedom < 1) throw PreconditionError("t interval needs at least 2 samples");
  const boost::math::students_t dist(static_cast<double>(degrees_of_freedom));
  return boost::math::quantile(dist, 1.0 - (1.0 - level) / 2.0);
}

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

inline ConfidenceInterval confidence_interval(const SampleStats& s, IntervalMode mode = IntervalMode::Normal) {
  if (s.count < 2) throw PreconditionError("confidence interval needs count >= 2");
  if (!(s.stddev >= 0.0)) throw PreconditionError("standard deviation must be nonnegative");
  const double crit = mode == IntervalMode::Normal ? z_critical(s.level) : t_critical(s.level, s.count - 1);
  const double half = crit * s.stddev / std::sqrt(static_cast<double>(s.count));
  return {s.mean - half, s.mean + half};
}

inline ConfidenceInterval exponentiate_interval(ConfidenceInterval mu) {
  if (mu.lo > mu.hi) throw PreconditionError("interval bounds out of order");
  return {std::exp2(mu.lo), std::exp2(mu.hi)};
}

// ---------------------------------------------------------------------------
// Fixture: the published 14-sample table (n + D_n = 100), decimal commas
// normalized.

struct PublishedRow {
  int sample;
  double xi;
  double one_plus_xi;
  double s;
  double two_pow;
};

inline constexpr std::array<PublishedRow, 14> kPublishedTable{{
    {1, 0.7241, 1.7241, 0.4960, 3.3038},
    {2, 1.0833, 2.0833, 0.5021, 4.2379},
    {3, 1.1277, 2.1277, 0.5016, 4.3701},
    {4, 1.0833, 2.0833, 0.5021, 4.2379},
    {5, 1.3256, 2.3256, 0.4976, 5.0127},
    {6, 0.7857, 1.7857, 0.4989, 3.4479},
    {7, 1.0833, 2.0833, 0.5021, 4.2379},
    {8, 1.0833, 2.0833, 0.5021, 4.2379},
    {9, 1.8571, 2.8571, 0.4794, 7.2458},
    {10, 0.8519, 1.8519, 0.5009, 3.6096},
    {11, 1.0408, 2.0408, 0.5024, 4.1148},
    {12, 0.9231, 1.9231, 0.5021, 3.7923},
    {13, 0.9608, 1.9608, 0.5024, 3.8927},
    {14, 1.1739, 2.1739, 0.5009, 4.5125},
}};

inline constexpr std::uint64_t kPublishedSampleLength = 100;

struct PublishedInterval {
  double level;
  double lo;
  double hi;
};

/// Printed bounds; the same numbers appear under both the mu = E(1 + xi)
/// and the chi = 2^mu headings.
inline constexpr std::array<PublishedInterval, 3> kPublishedIntervals{{
    {0.95, 3.8953, 4.9174},
    {0.98, 3.7794, 5.0333},
    {0.99, 3.6938, 5.1189},
}};

/// Integer (zeros, ones) with zeros + ones = length whose ratio rounds to xi
/// at four decimals; empty if none does.
inline std::optional<RatioSample> reconstruct_counts(double xi, std::uint64_t length = kPublishedSampleLength) {
  for (std::uint64_t ones = 1; ones <= length; ++ones) {
    const double r = static_cast<double>(length - ones) / static_cast<double>(ones);
    if (std::abs(std::round(r * 1e4) / 1e4 - xi) < 5e-9) return ratio_from_counts(length - ones, ones);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Drift bound for odd trajectories

struct DriftBound {
  Rational bound;         // (3 x0 + 1) 4^n / 2^{(n+1) mean_k}
  std::uint64_t exponent_total = 0;  // (n + 1) mean_k
};

/// ((3 x0 + 1) / 4) (4 / 2^{mean_k})^{n+1}, exact. mean_k must be the mean
/// exponent of n + 1 odd steps, so (n + 1) mean_k is an integer.
inline DriftBound drift_bound(const Natural& x0, std::uint64_t n, const Rational& mean_k) {
  const Rational total = mean_k * Rational(natural_from_u64(n + 1));
  if (total.get_den() != 1 || sgn(total) < 0)
    throw PreconditionError("(n + 1) * mean_k must be a nonnegative integer");
  DriftBound d;
  d.exponent_total = to_u64(Natural(total.get_num()));
  d.bound = make_rational((3 * x0 + 1) * pow_ui(Natural(4), n), pow2(d.exponent_total));
  return d;
}

/// bound >= actual, decided by the integer inequality
/// (3 x0 + 1) 4^n >= actual 2^{(n+1) mean_k}.
inline bool drift_bound_holds(const Natural& x0, std::uint64_t n, const Rational& mean_k, const Natural& actual) {
  const DriftBound d = drift_bound(x0, n, mean_k);
  return (3 * x0 + 1) * pow_ui(Natural(4), n) >= actual * pow2(d.exponent_total);
}

// ---------------------------------------------------------------------------
// Stopping times

struct StoppingProfile {
  Natural x;
  /// First k with T^k(x) < x; absent for x = 1 or when not reached.
  std::optional<std::uint64_t> stopping_time;
  /// First k with T^k(x) = 1.
  std::optional<std::uint64_t> total_stopping_time;
  /// total_stopping_time / ln(x); x >= 2 only.
  std::optional<double> ratio;
  bool complete = false;
};

inline double natural_log(const Natural& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

inline StoppingProfile stopping_profile(const Natural& x, std::uint64_t max_steps = kDefaultMaxSteps) {
  if (sgn(x) <= 0) throw DomainError("stopping profile needs x >= 1");
  StoppingProfile p;
  p.x = x;
  const Trajectory t = trajectory_general(x, max_steps);
  for (std::size_t k = 1; k < t.values.size(); ++k) {
    if (t.values[k] < x) {
      p.stopping_time = k;
      break;
    }
  }
  if (t.terminated == Termination::ReachedOne) {
    p.total_stopping_time = t.step_count();
    p.complete = true;
    if (x >= 2) p.ratio = static_cast<double>(t.step_count()) / natural_log(x);
  }
  return p;
}

/// Reference constant of the total-stopping-time lower bound (natural log).
inline constexpr double kStoppingTimeReference = 6.14316;

struct RatioSurvey {
  std::uint64_t limit = 0;
  double max_ratio = 0.0;
  std::uint64_t argmax = 0;
  double reference = kStoppingTimeReference;
};

inline RatioSurvey ratio_survey(std::uint64_t limit, unsigned threads = 1, std::uint64_t max_steps = kDefaultMaxSteps) {
  if (limit < 2) throw PreconditionError("ratio survey needs limit >= 2");
  SweepOptions opts;
  opts.threads = threads;
  opts.max_steps = max_steps;
  const SweepReport r = sweep_to_one(limit, opts);
  return {limit, r.max_ratio, r.argmax_ratio, kStoppingTimeReference};
}

/// Largest x whose reference bound reference * ln(x) stays below sigma:
/// exp(sigma / reference).
inline double reference_crossover(double sigma) { return std::exp(sigma / kStoppingTimeReference); }

}  // namespace collatz

#endif  // COLLATZ_MONTECARLO_HPP
