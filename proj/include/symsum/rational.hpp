#pragma once

#include <gmpxx.h>

#include <string>

#include "symsum/errors.hpp"

namespace symsum {

// Exact arithmetic backing every probability and coefficient in the library.
// mpq_class results of arithmetic are always canonical (lowest terms, positive
// denominator); only raw two-argument construction needs canonicalize().
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Canonical text form: "num" when the denominator is 1, else "num/den".
inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_from_string(const std::string& s) {
  try {
    Rational r(s);
    if (r.get_den() == 0) throw Error(errc::validation, "rational with zero denominator: " + s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(errc::validation, "malformed rational: " + s);
  }
}

inline BigInt bigint_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace symsum
