#ifndef COLLATZ_IDENTITIES_HPP
#define COLLATZ_IDENTITIES_HPP

// Exact checks of the algebraic identities around the odd procedure. Every
// check evaluates its two sides along separate code paths: one iterates the
// map, the other evaluates a closed formula.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "collatz/dynamics.hpp"
#include "collatz/errors.hpp"
#include "collatz/natural.hpp"

namespace collatz {

/// Residue class 2^k m + residue, 0 <= residue < 2^k.
struct ResidueClass {
  unsigned modulus_exponent = 0;
  std::uint64_t residue = 0;

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

inline void validate(const ResidueClass& c) {
  if (c.modulus_exponent >= 64) throw PreconditionError("residue class modulus exponent must be < 64");
  if (c.residue >= (std::uint64_t{1} << c.modulus_exponent))
    throw PreconditionError("residue must be below 2^k");
}

/// Shortcut step extended with T(0) = 0. Only used where residue 0 needs a
/// value; the public map keeps 0 out of its domain.
inline GeneralStep step_general_or_zero(const Natural& x) {
  if (sgn(x) == 0) return {Natural(0), StepKind::Decrease};
  return step_general(x);
}

struct ShiftLawResult {
  bool holds = false;
  unsigned increases = 0;  // p_k
  Natural lhs;
  Natural rhs;
};

/// T^k(2^k m + i) against 3^{p_k} m + T^k(i), where p_k counts the
/// increasing steps among the first k steps from i.
inline ShiftLawResult verify_shift_law(unsigned k, const Natural& m, std::uint64_t i) {
  if (k < 1) throw PreconditionError("shift law needs k >= 1");
  validate(ResidueClass{k, i});
  if (sgn(m) < 0) throw PreconditionError("m must be nonnegative");

  ShiftLawResult r;
  Natural x = pow2(k) * m + natural_from_u64(i);
  for (unsigned s = 0; s < k; ++s) x = step_general_or_zero(x).value;
  r.lhs = std::move(x);

  Natural y = natural_from_u64(i);
  for (unsigned s = 0; s < k; ++s) {
    auto step = step_general_or_zero(y);
    // T(0) = 0 is a convention; it never counts as an increase.
    if (sgn(y) > 0 && step.kind == StepKind::Increase) ++r.increases;
    y = std::move(step.value);
  }
  r.rhs = pow_ui(Natural(3), r.increases) * m + y;
  r.holds = r.lhs == r.rhs;
  return r;
}

struct ClosedFormResult {
  Natural lhs;
  Natural rhs;
  bool holds = false;
};

/// Right-hand side of T^n(x0) 2^{v_n} = 3^n x0 + sum_{r=1}^n 3^{n-r} 2^{v_{r-1}}
/// (with a, b generalizing 3, 1), from prefix sums v_0..v_{n} or longer.
inline Natural closed_form_rhs(const Natural& x0, std::span<const std::uint64_t> prefix_sums, std::size_t n,
                               unsigned long a = 3, unsigned long b = 1) {
  if (prefix_sums.size() < n + 1) throw PreconditionError("not enough prefix sums for closed form");
  Natural sum = 0;
  for (std::size_t r = 1; r <= n; ++r) sum += pow_ui(Natural(a), n - r) * pow2(prefix_sums[r - 1]);
  return pow_ui(Natural(a), n) * x0 + sum * b;
}

/// Runs the odd procedure for exactly n steps (through the fixed point 1 if
/// reached) and compares both sides of the closed form.
inline ClosedFormResult closed_form_check(const Natural& x0, std::size_t n) {
  if (sgn(x0) <= 0 || !is_odd(x0)) throw DomainError("closed form needs an odd x0 >= 1");
  Natural x = x0;
  ParityExponents parity;
  for (std::size_t s = 0; s < n; ++s) {
    auto [next, k] = step_odd(x);
    parity.push(k);
    x = std::move(next);
  }
  ClosedFormResult r;
  r.lhs = x * pow2(parity.total());
  r.rhs = closed_form_rhs(x0, parity.prefix_sums, n);
  r.holds = r.lhs == r.rhs;
  return r;
}

struct ClosedFormSweep {
  std::size_t steps_checked = 0;
  std::optional<std::size_t> first_failure;  // step index n
};

/// Closed form at every step of the odd trajectory of x0 until it reaches 1.
inline ClosedFormSweep closed_form_check_all(const Natural& x0, std::uint64_t max_steps = kDefaultMaxSteps) {
  const OddTrajectory odd = trajectory_odd(x0, max_steps);
  ClosedFormSweep out;
  for (std::size_t n = 1; n <= odd.parity.size(); ++n) {
    const Natural lhs = odd.trajectory.values[n] * pow2(odd.parity.prefix_sums[n]);
    const Natural rhs = closed_form_rhs(x0, odd.parity.prefix_sums, n);
    ++out.steps_checked;
    if (lhs != rhs) {
      out.first_failure = n;
      break;
    }
  }
  return out;
}

/// (2^{v_m} - sum_{k<m} 3^{m-k-1} 2^{v_k}) / 3^m for strictly increasing v
/// starting at 0.
inline Rational bohm_sontacchi_reconstruct(std::span<const std::uint64_t> v) {
  if (v.empty() || v[0] != 0) throw PreconditionError("prefix sums must start at v_0 = 0");
  for (std::size_t j = 1; j < v.size(); ++j)
    if (v[j] <= v[j - 1]) throw PreconditionError("prefix sums must be strictly increasing");
  const std::size_t m = v.size() - 1;
  Natural sum = 0;
  for (std::size_t k = 0; k < m; ++k) sum += pow_ui(Natural(3), m - k - 1) * pow2(v[k]);
  Natural num = pow2(v[m]);
  num -= sum;
  return make_rational(num, pow_ui(Natural(3), m));
}

struct GeometricSumResult {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

/// sum_{r=n}^{n+m} (4/3)^r against 3 (4/3)^n ((4/3)^{m+1} - 1).
inline GeometricSumResult geometric_sum_identity(unsigned n, unsigned m) {
  const Rational ratio(4, 3);
  GeometricSumResult r;
  Rational term = pow_ui(ratio, n);
  for (unsigned j = 0; j <= m; ++j) {
    r.lhs += term;
    term *= ratio;
  }
  r.rhs = 3 * pow_ui(ratio, n) * (pow_ui(ratio, m + 1) - 1);
  r.rhs.canonicalize();
  r.holds = r.lhs == r.rhs;
  return r;
}

// ---------------------------------------------------------------------------
// Heuristic model of T^{n+m}(x0)
//
// Model assumptions, both approximations and never claimed to equal the
// true trajectory value:
//   A1  the 2-adic exponent total over n increases is taken as 2n, turning
//       3^n / 2^{v_n} into (3/4)^n;
//   A2  for r >= n the decrement ratio D_r / r is replaced by 1, so each tail
//       term 2^{r(1+D_r/r)} / 3^r becomes (4/3)^r.
// For r < n the decrement count is read from the actual exponents through
// v_{r-1} = r + D_r - 2, i.e. D_r = v_{r-1} - r + 2.

inline std::int64_t model_decrements(std::span<const std::uint64_t> prefix_sums, std::size_t r) {
  return static_cast<std::int64_t>(prefix_sums[r - 1]) - static_cast<std::int64_t>(r) + 2;
}

inline void require_model_prefix(const ParityExponents& prefix, unsigned n) {
  if (n < 1) throw PreconditionError("heuristic model needs n >= 1");
  if (prefix.prefix_sums.size() + 1 < n)
    throw PreconditionError("heuristic model needs exponents for n - 1 steps");
}

/// Model estimate of the n-th odd value: x0 (3/4)^n + (3/4)^n sum_{r=1}^n 2^{v_{r-1}} / 3^r.
inline Rational heuristic_odd_estimate(const Rational& x0, const ParityExponents& prefix, unsigned n) {
  if (prefix.prefix_sums.size() < n) throw PreconditionError("estimate needs v_0..v_{n-1}");
  const Rational q = pow_ui(Rational(3, 4), n);
  Rational sum = 0;
  for (unsigned r = 1; r <= n; ++r) sum += make_rational(pow2(prefix.prefix_sums[r - 1]), pow_ui(Natural(3), r));
  sum.canonicalize();
  Rational out = q * x0 + q * sum;
  out.canonicalize();
  return out;
}

/// Term-by-term expansion:
///   x0 (3/4)^{n+m}
///   + 1/4 (3/4)^{n+m} sum_{r=1}^{n-1} 2^{r + D_r} / 3^r
///   + 1/4 (3/4)^{n+m} sum_{r=n}^{n+m} (4/3)^r.
inline Rational heuristic_model(const Rational& x0, const ParityExponents& prefix, unsigned n, unsigned m) {
  require_model_prefix(prefix, n);
  const Rational q = pow_ui(Rational(3, 4), n + m);
  Rational head = 0;
  for (unsigned r = 1; r + 1 <= n; ++r) {
    const std::int64_t exponent = static_cast<std::int64_t>(r) + model_decrements(prefix.prefix_sums, r);
    head += make_rational(pow2(static_cast<std::uint64_t>(exponent)), pow_ui(Natural(3), r));
  }
  head.canonicalize();
  Rational tail = 0;
  for (unsigned r = n; r <= n + m; ++r) tail += pow_ui(Rational(4, 3), r);
  Rational out = x0 * q + Rational(1, 4) * q * head + Rational(1, 4) * q * tail;
  out.canonicalize();
  return out;
}

/// Recursive form: (3/4)^{m+1} T^{n-1} + 1 - (3/4)^{m+1}, with T^{n-1} the
/// model estimate of the (n-1)-th odd value.
inline Rational heuristic_model_recursive(const Rational& x0, const ParityExponents& prefix, unsigned n, unsigned m) {
  require_model_prefix(prefix, n);
  const Rational decay = pow_ui(Rational(3, 4), m + 1);
  Rational out = decay * heuristic_odd_estimate(x0, prefix, n - 1) + 1 - decay;
  out.canonicalize();
  return out;
}

/// The tail term on its own, 1/4 (3/4)^{n+m} sum_{r=n}^{n+m} (4/3)^r, which
/// equals 1 - (3/4)^{m+1}.
inline Rational heuristic_tail(unsigned n, unsigned m) {
  Rational tail = 0;
  for (unsigned r = n; r <= n + m; ++r) tail += pow_ui(Rational(4, 3), r);
  Rational out = Rational(1, 4) * pow_ui(Rational(3, 4), n + m) * tail;
  out.canonicalize();
  return out;
}

}  // namespace collatz

#endif  // COLLATZ_IDENTITIES_HPP
