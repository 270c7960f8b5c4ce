#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

#include "quadhess/error.hpp"

namespace quadhess {

// Exact rationals are GMP rationals, always kept canonical (lowest terms,
// positive denominator).
using Rational = mpq_class;
using Real = double;
using Complex = std::complex<double>;

enum class ScalarKind { exact, real, complex };

std::string_view to_string(ScalarKind kind);

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, Real> ||
                 std::same_as<T, Complex>;

template <class T>
concept FloatingScalar = std::same_as<T, Real> || std::same_as<T, Complex>;

template <Scalar T>
inline constexpr ScalarKind kind_of = std::same_as<T, Rational> ? ScalarKind::exact
                                      : std::same_as<T, Real>   ? ScalarKind::real
                                                                : ScalarKind::complex;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

/// |x| as a double. Exact for zero in every kind.
inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double magnitude(Real x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }

template <Scalar T>
bool is_zero(const T& x) {
  if constexpr (std::same_as<T, Rational>) {
    return sgn(x) == 0;
  } else {
    return x == T(0);
  }
}

inline Real to_real(const Rational& x) { return x.get_d(); }

template <Scalar To>
To scalar_cast(const Rational& x) {
  if constexpr (std::same_as<To, Rational>) {
    return x;
  } else {
    return To(x.get_d());
  }
}

/// x^k for integer k; negative k inverts first.
template <Scalar T>
T ipow(const T& x, int k) {
  if (k < 0) {
    if (is_zero(x)) throw Error(ErrorKind::singular, "zero raised to a negative power");
    T inv = T(1) / x;
    return ipow(inv, -k);
  }
  T result(1);
  T base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

/// Exact square root of a non-negative rational whose numerator and
/// denominator are both perfect squares.
std::optional<Rational> exact_sqrt(const Rational& x);

/// Square root used on the branch formula: principal root for the floating
/// kinds, exact root (or irrational_root error) for rationals. Negative
/// reals are rejected by callers before getting here.
Rational principal_sqrt(const Rational& x);
Real principal_sqrt(Real x);
Complex principal_sqrt(const Complex& x);

/// Canonical textual form: "p/q" or "p" for rationals, shortest round-trip
/// decimal for doubles, "re+imi" for complex.
std::string format_scalar(const Rational& x);
std::string format_scalar(Real x);
std::string format_scalar(const Complex& x);

/// Parses "p" or "p/q" (optional sign); throws Error(parse) on anything else,
/// including zero denominators and decimal points.
Rational parse_rational(std::string_view text);

}  // namespace quadhess
