#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyeq {

// Exact arithmetic throughout the library uses GMP rationals; the float
// instantiations of the templated operations use plain double.
using Rational = mpq_class;
using BigInt = mpz_class;

enum class NumericMode { ExactRational, Float64 };

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

// gmpxx has no long long constructors; 64-bit long covers our ranges.
inline Rational make_rational(long long num, long long den = 1) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Parses "p", "p/q", or a plain decimal like "-0.25" (read as an exact
// rational, 25/100 canonicalized). Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Scalar traits shared by the dual-mode (exact/float) operations.
template <class T>
struct NumericTraits;

template <>
struct NumericTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero_tol() { return Rational(0); }
  static Rational sum_tol() { return Rational(0); }
};

template <>
struct NumericTraits<double> {
  static constexpr bool exact = false;
  static double zero_tol() { return 1e-9; }
  static double sum_tol() { return 1e-9; }
};

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

}  // namespace polyeq
