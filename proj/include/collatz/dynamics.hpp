#ifndef COLLATZ_DYNAMICS_HPP
#define COLLATZ_DYNAMICS_HPP

// Exact general (shortcut) and odd Collatz procedures, the odd an+b maps,
// step classification and trajectory capture.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "collatz/errors.hpp"
#include "collatz/natural.hpp"

namespace collatz {

inline constexpr std::uint64_t kDefaultMaxSteps = 100000;

enum class StepKind { Increase, Decrease };

enum class Termination { ReachedOne, ReachedCycle, StepLimit };

constexpr std::string_view to_string(StepKind k) {
  return k == StepKind::Increase ? "increase" : "decrease";
}

constexpr std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ReachedOne: return "reached_one";
    case Termination::ReachedCycle: return "reached_cycle";
    case Termination::StepLimit: return "step_limit";
  }
  return "unknown";
}

constexpr StepKind classify(bool grew) { return grew ? StepKind::Increase : StepKind::Decrease; }

/// Parameters of the odd map x -> (a x + b) / 2^k. Both must be odd.
struct AnbParams {
  unsigned long a = 3;
  unsigned long b = 1;

  friend bool operator==(const AnbParams&, const AnbParams&) = default;
};

inline void validate(const AnbParams& p) {
  if (p.a < 3 || p.a % 2 == 0) throw PreconditionError("an+b map requires odd a >= 3");
  if (p.b < 1 || p.b % 2 == 0) throw PreconditionError("an+b map requires odd b >= 1");
}

struct GeneralStep {
  Natural value;
  StepKind kind;
};

struct OddStep {
  Natural value;
  unsigned k;
};

/// Exponents k_1..k_n removed at each odd step, with prefix sums v_0 = 0,
/// v_r = k_1 + ... + k_r.
struct ParityExponents {
  std::vector<unsigned> exponents;
  std::vector<std::uint64_t> prefix_sums{0};

  void push(unsigned k) {
    exponents.push_back(k);
    prefix_sums.push_back(prefix_sums.back() + k);
  }

  std::size_t size() const { return exponents.size(); }
  std::uint64_t total() const { return prefix_sums.back(); }

  /// v_n / n as an exact rational; requires n >= 1.
  Rational mean_k() const {
    if (exponents.empty()) throw PreconditionError("mean_k of an empty exponent list");
    return make_rational(natural_from_u64(total()), natural_from_u64(exponents.size()));
  }
};

struct Trajectory {
  Natural start;
  std::vector<Natural> values;
  std::vector<StepKind> steps;
  Termination terminated = Termination::StepLimit;

  std::size_t step_count() const { return steps.size(); }
};

struct OddTrajectory {
  Trajectory trajectory;
  ParityExponents parity;
};

struct StepCounts {
  std::uint64_t increase = 0;
  std::uint64_t decrease = 0;

  friend bool operator==(const StepCounts&, const StepCounts&) = default;
};

// ---------------------------------------------------------------------------
// Single steps

inline GeneralStep step_general(const Natural& x) {
  if (sgn(x) <= 0) throw DomainError("general map is undefined at 0");
  if (is_odd(x)) {
    Natural y = 3 * x + 1;
    mpz_fdiv_q_2exp(y.get_mpz_t(), y.get_mpz_t(), 1);
    return {std::move(y), StepKind::Increase};
  }
  Natural y;
  mpz_fdiv_q_2exp(y.get_mpz_t(), x.get_mpz_t(), 1);
  return {std::move(y), StepKind::Decrease};
}

/// Divides out every factor of two of an even positive value.
inline OddStep strip_twos(Natural y) {
  const unsigned k = trailing_zeros(y);
  mpz_fdiv_q_2exp(y.get_mpz_t(), y.get_mpz_t(), k);
  return {std::move(y), k};
}

inline OddStep step_anb(const Natural& x, const AnbParams& p) {
  validate(p);
  if (sgn(x) <= 0 || !is_odd(x)) throw DomainError("odd map requires an odd x >= 1");
  return strip_twos(x * p.a + p.b);
}

inline OddStep step_odd(const Natural& x) {
  if (sgn(x) <= 0 || !is_odd(x)) throw DomainError("odd map requires an odd x >= 1");
  return strip_twos(3 * x + 1);
}

/// Shortcut step on machine words. Empty when the result would overflow.
inline std::optional<std::uint64_t> checked_step_general(std::uint64_t x) {
  if (x == 0) throw DomainError("general map is undefined at 0");
  if ((x & 1u) == 0) return x >> 1;
  // (3x+1)/2 = x + (x+1)/2; x odd so x+1 cannot overflow unless x = max.
  const std::uint64_t half = (x >> 1) + 1;
  std::uint64_t out = 0;
  if (__builtin_add_overflow(x, half, &out)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Trajectories

inline Trajectory trajectory_general(const Natural& x0, std::uint64_t max_steps = kDefaultMaxSteps) {
  if (sgn(x0) <= 0) throw DomainError("general map is undefined at 0");
  Trajectory t;
  t.start = x0;
  t.values.push_back(x0);
  while (t.values.back() != 1) {
    if (t.steps.size() >= max_steps) {
      t.terminated = Termination::StepLimit;
      return t;
    }
    auto [next, kind] = step_general(t.values.back());
    t.values.push_back(std::move(next));
    t.steps.push_back(kind);
  }
  t.terminated = Termination::ReachedOne;
  return t;
}

inline OddTrajectory trajectory_odd(const Natural& x0, std::uint64_t max_steps = kDefaultMaxSteps) {
  if (sgn(x0) <= 0 || !is_odd(x0)) throw DomainError("odd procedure requires an odd x0 >= 1");
  OddTrajectory out;
  Trajectory& t = out.trajectory;
  t.start = x0;
  t.values.push_back(x0);
  while (t.values.back() != 1) {
    if (t.steps.size() >= max_steps) {
      t.terminated = Termination::StepLimit;
      return out;
    }
    auto [next, k] = step_odd(t.values.back());
    t.steps.push_back(classify(next > t.values.back()));
    t.values.push_back(std::move(next));
    out.parity.push(k);
  }
  t.terminated = Termination::ReachedOne;
  return out;
}

/// Exponents of exactly `steps` odd steps from x0, continuing through the
/// fixed point 1 (k = 2) if it is reached.
inline ParityExponents odd_exponents(const Natural& x0, std::uint64_t steps) {
  if (sgn(x0) <= 0 || !is_odd(x0)) throw DomainError("odd procedure requires an odd x0 >= 1");
  ParityExponents out;
  Natural x = x0;
  for (std::uint64_t i = 0; i < steps; ++i) {
    auto [next, k] = step_odd(x);
    out.push(k);
    x = std::move(next);
  }
  return out;
}

inline StepCounts classify_counts(const Trajectory& t) {
  StepCounts c;
  for (StepKind k : t.steps) (k == StepKind::Increase ? c.increase : c.decrease) += 1;
  return c;
}

/// Relation between the exponent sums of an odd trajectory and the
/// increase/decrease counts of the general trajectory covering it.
struct ExponentBookkeeping {
  std::uint64_t odd_steps = 0;     // n
  std::uint64_t exponent_sum = 0;  // sum of k_i
  std::uint64_t decreases = 0;     // D, counted on the general trajectory
  /// exponent_sum - (n + D); observed to be 0.
  std::int64_t offset = 0;
};

inline ExponentBookkeeping exponent_bookkeeping(const Natural& x0, std::uint64_t max_steps = kDefaultMaxSteps) {
  const OddTrajectory odd = trajectory_odd(x0, max_steps);
  ExponentBookkeeping b;
  b.odd_steps = odd.parity.size();
  b.exponent_sum = odd.parity.total();
  // Replay the same span with the general map: one Increase, then halvings
  // until the next odd value.
  Natural x = x0;
  for (std::uint64_t r = 0; r < b.odd_steps; ++r) {
    x = step_general(x).value;
    while (!is_odd(x)) {
      x = step_general(x).value;
      ++b.decreases;
    }
  }
  b.offset = static_cast<std::int64_t>(b.exponent_sum) -
             static_cast<std::int64_t>(b.odd_steps + b.decreases);
  return b;
}

}  // namespace collatz

#endif  // COLLATZ_DYNAMICS_HPP
