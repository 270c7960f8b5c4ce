#pragma once

#include <random>
#include <string>

#include "quadhess/identity.hpp"
#include "quadhess/oracle.hpp"

namespace quadhess::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline QuadricSurface<Rational> circle() {
  return QuadricSurface<Rational>(Matrix<Rational>::diagonal({1, 1, -1}));
}

inline QuadricSurface<Rational> sphere() {
  return QuadricSurface<Rational>(Matrix<Rational>::diagonal({1, 1, 1, -1}));
}

// y = x1² + x2², written as −x1² − x2² + y = 0.
inline QuadricSurface<Rational> paraboloid() {
  const Rational h = q("1/2");
  return QuadricSurface<Rational>(Matrix<Rational>::from_rows(
      {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 0, h}, {0, 0, h, 0}}));
}

// y² = x1² + x2², a cone through the origin: det(sym_q) = 0.
inline QuadricSurface<Rational> cone() {
  return QuadricSurface<Rational>(Matrix<Rational>::diagonal({1, 1, -1, 0}));
}

template <Scalar T>
ColVector<T> point(std::initializer_list<T> xs) {
  return ColVector<T>(xs);
}

inline Rational frac(long num, long den) {
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

inline Rational random_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  const long n = num(rng);
  return frac(n, den(rng));
}

inline Matrix<Rational> random_rational_matrix(std::mt19937_64& rng, std::size_t rows,
                                               std::size_t cols, long bound = 4) {
  return Matrix<Rational>::generate(rows, cols,
                                    [&](std::size_t, std::size_t) { return random_rational(rng, bound); });
}

inline ColVector<Rational> random_rational_vector(std::mt19937_64& rng, std::size_t dim,
                                                  long bound = 4) {
  return ColVector<Rational>::generate(dim, [&](std::size_t) { return random_rational(rng, bound); });
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace quadhess::testing
