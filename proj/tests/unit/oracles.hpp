#ifndef COLLATZ_TESTS_ORACLES_HPP
#define COLLATZ_TESTS_ORACLES_HPP

// Brute-force reference computations for the tests. Nothing here calls into
// the library; values are machine words or plain GMP integers.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace oracle {

/// Unaccelerated map: n/2 or 3n+1.
inline std::uint64_t slow_step(std::uint64_t n) { return n % 2 == 0 ? n / 2 : 3 * n + 1; }

/// Shortcut trajectory by the textbook definition, on machine words.
inline std::vector<std::uint64_t> shortcut_path(std::uint64_t x, std::size_t max_steps) {
  std::vector<std::uint64_t> out{x};
  while (x != 1 && out.size() <= max_steps) {
    x = x % 2 == 0 ? x / 2 : (3 * x + 1) / 2;
    out.push_back(x);
  }
  return out;
}

/// Odd-to-odd path of x (odd) to 1 with exponents, by repeated halving.
struct OddPath {
  std::vector<std::uint64_t> values;
  std::vector<unsigned> k;
};

inline OddPath odd_path(std::uint64_t x, unsigned a = 3, unsigned b = 1, std::size_t steps = 1000000) {
  OddPath p{{x}, {}};
  while (p.k.size() < steps && !(a == 3 && b == 1 && x == 1)) {
    std::uint64_t y = a * x + b;
    unsigned k = 0;
    while (y % 2 == 0) {
      y /= 2;
      ++k;
    }
    p.k.push_back(k);
    p.values.push_back(y);
    x = y;
  }
  return p;
}

/// Total shortcut steps to reach 1.
inline std::uint64_t total_stopping_time(std::uint64_t x) {
  std::uint64_t steps = 0;
  while (x != 1) {
    x = x % 2 == 0 ? x / 2 : (3 * x + 1) / 2;
    ++steps;
  }
  return steps;
}

/// sum_{r=lo}^{hi} (4/3)^r as numerator over 3^hi (integer arithmetic only).
inline mpq_class four_thirds_sum(unsigned lo, unsigned hi) {
  mpz_class num = 0;
  for (unsigned r = lo; r <= hi; ++r) {
    mpz_class four_r, three_rest;
    mpz_ui_pow_ui(four_r.get_mpz_t(), 4, r);
    mpz_ui_pow_ui(three_rest.get_mpz_t(), 3, hi - r);
    num += four_r * three_rest;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 3, hi);
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace oracle

#endif  // COLLATZ_TESTS_ORACLES_HPP
