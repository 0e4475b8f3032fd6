#ifndef COLLATZ_NATURAL_HPP
#define COLLATZ_NATURAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "collatz/errors.hpp"

namespace collatz {

// Arbitrary precision integers and rationals. Values handled as Natural are
// kept nonnegative by every operation in this library.
using Natural = mpz_class;
using Rational = mpq_class;

inline Natural natural_from_u64(std::uint64_t v) {
  Natural out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return out;
}

inline Natural natural_from_string(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw PreconditionError("not a nonnegative decimal integer: '" + s + "'");
  return Natural(s, 10);
}

inline bool fits_u64(const Natural& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Natural& v) {
  if (!fits_u64(v)) throw DomainError("value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, v.get_mpz_t());
  return out;
}

inline std::string to_string(const Natural& v) { return v.get_str(10); }

inline std::string to_string(const Rational& v) { return v.get_str(10); }

inline bool is_odd(const Natural& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

/// Exponent of the largest power of two dividing v (v > 0).
inline unsigned trailing_zeros(const Natural& v) {
  return static_cast<unsigned>(mpz_scan1(v.get_mpz_t(), 0));
}

/// Number of binary digits; 0 for v = 0.
inline std::uint64_t bit_length(const Natural& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline Natural pow2(std::uint64_t e) {
  Natural out;
  mpz_setbit(out.get_mpz_t(), e);
  return out;
}

inline Natural pow_ui(const Natural& base, unsigned long e) {
  Natural out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Rational pow_ui(const Rational& base, unsigned long e) {
  Natural num = pow_ui(Natural(base.get_num()), e);
  Natural den = pow_ui(Natural(base.get_den()), e);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

inline Rational make_rational(const Natural& num, const Natural& den) {
  if (sgn(den) == 0) throw DomainError("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

inline double to_double(const Rational& v) { return v.get_d(); }

}  // namespace collatz

#endif  // COLLATZ_NATURAL_HPP
