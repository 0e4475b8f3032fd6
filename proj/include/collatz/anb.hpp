#ifndef COLLATZ_ANB_HPP
#define COLLATZ_ANB_HPP

// Odd an+b procedures: trajectories, cycle detection in canonical rotation,
// the closed-form identity, the residue-class shift law and horizon-bounded
// growth diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "collatz/dynamics.hpp"
#include "collatz/errors.hpp"
#include "collatz/identities.hpp"
#include "collatz/natural.hpp"

namespace collatz {

struct AnbTrajectory {
  AnbParams params;
  OddTrajectory odd;
  /// Index in values of the first occurrence of the repeated value, when the
  /// trajectory closed a cycle.
  std::optional<std::size_t> cycle_entry;
};

struct CycleRecord {
  AnbParams params;
  std::vector<Natural> members;     // canonical rotation, smallest first
  std::vector<unsigned> exponents;  // exponents[j]: step from members[j] to members[j+1 mod size]

  std::uint64_t exponent_sum() const {
    std::uint64_t s = 0;
    for (unsigned k : exponents) s += k;
    return s;
  }

  friend bool operator==(const CycleRecord&, const CycleRecord&) = default;
};

struct NaturalHash {
  std::size_t operator()(const Natural& v) const {
    return static_cast<std::size_t>(mpz_getlimbn(v.get_mpz_t(), 0)) ^ mpz_size(v.get_mpz_t());
  }
};

/// Odd-value trajectory; stops before revisiting a value (ReachedCycle) or
/// after max_steps steps (StepLimit).
inline AnbTrajectory trajectory_anb(const Natural& x0, const AnbParams& p, std::uint64_t max_steps = kDefaultMaxSteps) {
  validate(p);
  if (sgn(x0) <= 0 || !is_odd(x0)) throw DomainError("an+b procedure requires an odd x0 >= 1");
  AnbTrajectory out;
  out.params = p;
  Trajectory& t = out.odd.trajectory;
  t.start = x0;
  t.values.push_back(x0);
  std::unordered_map<Natural, std::size_t, NaturalHash> seen{{x0, 0}};
  for (;;) {
    if (t.steps.size() >= max_steps) {
      t.terminated = Termination::StepLimit;
      return out;
    }
    auto [next, k] = step_anb(t.values.back(), p);
    if (auto it = seen.find(next); it != seen.end()) {
      out.cycle_entry = it->second;
      t.terminated = Termination::ReachedCycle;
      return out;
    }
    seen.emplace(next, t.values.size());
    t.steps.push_back(classify(next > t.values.back()));
    t.values.push_back(std::move(next));
    out.odd.parity.push(k);
  }
}

/// Builds the cycle record through `member`, stepping the map around it.
inline CycleRecord canonical_cycle(const Natural& member, const AnbParams& p, std::uint64_t max_length = kDefaultMaxSteps) {
  std::vector<Natural> members{member};
  for (;;) {
    auto next = step_anb(members.back(), p).value;
    if (next == member) break;
    if (members.size() >= max_length) throw PreconditionError("value is not on a cycle of bounded length");
    members.push_back(std::move(next));
  }
  const auto smallest = std::min_element(members.begin(), members.end());
  std::rotate(members.begin(), smallest, members.end());
  CycleRecord c;
  c.params = p;
  for (const Natural& m : members) c.exponents.push_back(step_anb(m, p).k);
  c.members = std::move(members);
  return c;
}

/// Cycle entered by the trajectory of x0 within max_steps, if any.
inline std::optional<CycleRecord> find_cycle(const Natural& x0, const AnbParams& p, std::uint64_t max_steps = kDefaultMaxSteps) {
  const AnbTrajectory t = trajectory_anb(x0, p, max_steps);
  if (!t.cycle_entry) return std::nullopt;
  return canonical_cycle(t.odd.trajectory.values[*t.cycle_entry], p);
}

/// 2^{sum k} * prod members against prod (a * member + b). Returns the
/// residue lhs - rhs, zero for a genuine cycle.
inline Natural cycle_product_residue(const CycleRecord& c) {
  Natural lhs = pow2(c.exponent_sum());
  Natural rhs = 1;
  for (const Natural& m : c.members) {
    lhs *= m;
    rhs *= m * c.params.a + c.params.b;
  }
  return lhs - rhs;
}

inline bool verify_cycle(const CycleRecord& c) {
  if (c.members.empty() || c.members.size() != c.exponents.size()) return false;
  for (std::size_t j = 0; j < c.members.size(); ++j) {
    const auto step = step_anb(c.members[j], c.params);
    if (step.value != c.members[(j + 1) % c.members.size()] || step.k != c.exponents[j]) return false;
  }
  return sgn(cycle_product_residue(c)) == 0;
}

/// Odd starts 1, 3, ..., max_start scanned for cycles, deduplicated by
/// canonical form and ordered by smallest member.
inline std::vector<CycleRecord> cycle_catalog(const AnbParams& p, std::uint64_t max_start, std::uint64_t max_steps) {
  std::map<Natural, CycleRecord> by_min;
  for (std::uint64_t x = 1; x <= max_start; x += 2) {
    if (auto c = find_cycle(natural_from_u64(x), p, max_steps)) by_min.emplace(c->members.front(), std::move(*c));
  }
  std::vector<CycleRecord> out;
  for (auto& [key, c] : by_min) out.push_back(std::move(c));
  return out;
}

/// T^n(x0) 2^{v_n} against a^n x0 + b sum_{r=1}^n a^{n-r} 2^{v_{r-1}}, with
/// the odd map run for exactly n steps.
inline ClosedFormResult closed_form_anb_check(const Natural& x0, const AnbParams& p, std::size_t n) {
  validate(p);
  if (sgn(x0) <= 0 || !is_odd(x0)) throw DomainError("closed form needs an odd x0 >= 1");
  Natural x = x0;
  ParityExponents parity;
  for (std::size_t s = 0; s < n; ++s) {
    auto [next, k] = step_anb(x, p);
    parity.push(k);
    x = std::move(next);
  }
  ClosedFormResult r;
  r.lhs = x * pow2(parity.total());
  r.rhs = closed_form_rhs(x0, parity.prefix_sums, n, p.a, p.b);
  r.holds = r.lhs == r.rhs;
  return r;
}

/// Shortcut an+b general map: x/2 on evens, (a x + b)/2 on odds, T(0) = 0.
inline GeneralStep step_anb_general_or_zero(const Natural& x, const AnbParams& p) {
  if (sgn(x) == 0) return {Natural(0), StepKind::Decrease};
  if (is_odd(x)) {
    Natural y = x * p.a + p.b;
    mpz_fdiv_q_2exp(y.get_mpz_t(), y.get_mpz_t(), 1);
    return {std::move(y), StepKind::Increase};
  }
  Natural y;
  mpz_fdiv_q_2exp(y.get_mpz_t(), x.get_mpz_t(), 1);
  return {std::move(y), StepKind::Decrease};
}

/// T^k(2^k m + i) against a^{p_k} m + T^k(i) for the an+b shortcut map.
inline ShiftLawResult shift_law_anb_check(unsigned k, const Natural& m, std::uint64_t i, const AnbParams& p) {
  validate(p);
  if (k < 1) throw PreconditionError("shift law needs k >= 1");
  validate(ResidueClass{k, i});
  if (sgn(m) < 0) throw PreconditionError("m must be nonnegative");
  ShiftLawResult r;
  Natural x = pow2(k) * m + natural_from_u64(i);
  for (unsigned s = 0; s < k; ++s) x = step_anb_general_or_zero(x, p).value;
  r.lhs = std::move(x);
  Natural y = natural_from_u64(i);
  for (unsigned s = 0; s < k; ++s) {
    auto step = step_anb_general_or_zero(y, p);
    if (sgn(y) > 0 && step.kind == StepKind::Increase) ++r.increases;
    y = std::move(step.value);
  }
  r.rhs = pow_ui(Natural(p.a), r.increases) * m + y;
  r.holds = r.lhs == r.rhs;
  return r;
}

enum class GrowthLabel { BoundedCyclic, UnboundedWithinHorizon };

constexpr std::string_view to_string(GrowthLabel l) {
  return l == GrowthLabel::BoundedCyclic ? "bounded_cyclic_within_horizon" : "unbounded_within_horizon";
}

struct DivergenceDiagnostic {
  AnbParams params;
  Natural start;
  std::uint64_t steps_taken = 0;
  Natural peak;
  Natural final_value;
  std::uint64_t exponent_sum = 0;
  /// bit_length(final) - bit_length(start).
  std::int64_t bit_growth = 0;
  /// sign(a^n - 2^{sum k}): +1 when the multiplicative part outgrows the halvings.
  int growth_sign = 0;
  /// sum k / n, exact.
  Rational mean_k;
  /// (n log2 a - sum k) / n; display only.
  double drift_display = 0.0;
  GrowthLabel label = GrowthLabel::UnboundedWithinHorizon;
  std::optional<CycleRecord> cycle;
};

/// Never asserts divergence: a trajectory that has not closed a cycle within
/// the horizon is only labelled unbounded within that horizon.
inline DivergenceDiagnostic divergence_report(const Natural& x0, const AnbParams& p, std::uint64_t horizon) {
  const AnbTrajectory t = trajectory_anb(x0, p, horizon);
  const auto& values = t.odd.trajectory.values;
  DivergenceDiagnostic d;
  d.params = p;
  d.start = x0;
  d.steps_taken = t.odd.parity.size();
  d.peak = *std::max_element(values.begin(), values.end());
  d.final_value = values.back();
  d.exponent_sum = t.odd.parity.total();
  d.bit_growth = static_cast<std::int64_t>(bit_length(d.final_value)) - static_cast<std::int64_t>(bit_length(x0));
  if (d.steps_taken > 0) {
    d.growth_sign = cmp(pow_ui(Natural(p.a), d.steps_taken), pow2(d.exponent_sum));
    d.growth_sign = (d.growth_sign > 0) - (d.growth_sign < 0);
    d.mean_k = t.odd.parity.mean_k();
    d.drift_display = (static_cast<double>(d.steps_taken) * std::log2(static_cast<double>(p.a)) -
                       static_cast<double>(d.exponent_sum)) /
                      static_cast<double>(d.steps_taken);
  }
  if (t.cycle_entry) {
    d.label = GrowthLabel::BoundedCyclic;
    d.cycle = canonical_cycle(values[*t.cycle_entry], p);
  }
  return d;
}

}  // namespace collatz

#endif  // COLLATZ_ANB_HPP
