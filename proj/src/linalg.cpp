#include "quadhess/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace quadhess {
namespace {

void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) throw Error(ErrorKind::dimension, std::string(what) + ": matrix is not square");
}

// Fraction-free elimination. Each row is first multiplied by the lcm of its
// denominators so the elimination runs on integers; the product of those
// multipliers is divided back out at the end.
Rational bareiss_determinant(const Matrix<Rational>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);

  std::vector<mpz_class> a(n * n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class den = m(i, j).get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    scale *= lcm;
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = m(i, j).get_num() * (lcm / m(i, j).get_den());
    }
  }

  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return Rational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    const mpz_class& pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a[i * n + j] * pivot - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = std::move(v);
      }
      a[i * n + k] = 0;
    }
    prev = pivot;
  }

  Rational det(a[n * n - 1] * sign, scale);
  det.canonicalize();
  return det;
}

// In-place LU with partial pivoting by magnitude. Returns false when a pivot
// falls under the scale-aware threshold.
template <FloatingScalar T>
bool lu_decompose(std::vector<T>& a, std::size_t n, std::vector<std::size_t>& perm, int& sign) {
  std::vector<double> row_scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) row_scale[i] = std::max(row_scale[i], magnitude(a[i * n + j]));

  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  sign = 1;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = magnitude(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = magnitude(a[i * n + k]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0 || best <= kPivotTolerance * row_scale[perm[p]]) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(perm[k], perm[p]);
      sign = -sign;
    }
    const T pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = a[i * n + k] / pivot;
      a[i * n + k] = factor;
      if (factor == T(0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= factor * a[k * n + j];
    }
  }
  return true;
}

template <FloatingScalar T>
T lu_determinant(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  std::vector<T> a(m.entries().begin(), m.entries().end());
  std::vector<std::size_t> perm;
  int sign = 1;
  if (!lu_decompose(a, n, perm, sign)) return T(0);
  T det(static_cast<double>(sign));
  for (std::size_t k = 0; k < n; ++k) det *= a[k * n + k];
  return det;
}

template <FloatingScalar T>
Matrix<T> lu_solve(const Matrix<T>& m, const Matrix<T>& rhs) {
  const std::size_t n = m.rows();
  const std::size_t k = rhs.cols();
  std::vector<T> a(m.entries().begin(), m.entries().end());
  std::vector<std::size_t> perm;
  int sign = 1;
  if (!lu_decompose(a, n, perm, sign)) throw Error(ErrorKind::singular, "matrix is singular");

  std::vector<T> x(n * k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      T s = rhs(perm[i], c);
      for (std::size_t j = 0; j < i; ++j) s -= a[i * n + j] * x[j * k + c];
      x[i * k + c] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      T s = x[i * k + c];
      for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j * k + c];
      x[i * k + c] = s / a[i * n + i];
    }
  }
  return Matrix<T>(n, k, std::move(x));
}

Matrix<Rational> gauss_jordan_solve(const Matrix<Rational>& m, const Matrix<Rational>& rhs) {
  const std::size_t n = m.rows();
  const std::size_t k = rhs.cols();
  const std::size_t w = n + k;
  std::vector<Rational> a(n * w);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * w + j] = m(i, j);
    for (std::size_t j = 0; j < k; ++j) a[i * w + n + j] = rhs(i, j);
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && sgn(a[p * w + col]) == 0) ++p;
    if (p == n) throw Error(ErrorKind::singular, "matrix is singular");
    if (p != col)
      for (std::size_t j = 0; j < w; ++j) std::swap(a[col * w + j], a[p * w + j]);

    const Rational inv = Rational(1) / a[col * w + col];
    for (std::size_t j = col; j < w; ++j) a[col * w + j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a[i * w + col]) == 0) continue;
      const Rational factor = a[i * w + col];
      for (std::size_t j = col; j < w; ++j) a[i * w + j] -= factor * a[col * w + j];
    }
  }

  return Matrix<Rational>::generate(
      n, k, [&](std::size_t i, std::size_t j) { return a[i * w + n + j]; });
}

}  // namespace

template <Scalar T>
T determinant(const Matrix<T>& m) {
  require_square(m.rows(), m.cols(), "determinant");
  if constexpr (is_exact_v<T>) {
    return bareiss_determinant(m);
  } else {
    return lu_determinant(m);
  }
}

template <Scalar T>
Matrix<T> symmetric_part(const Matrix<T>& q) {
  require_square(q.rows(), q.cols(), "symmetric_part");
  const std::size_t n = q.rows();
  std::vector<T> e(n * n);
  const T half = T(1) / T(2);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = q(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      T v = (q(i, j) + q(j, i)) * half;
      e[i * n + j] = v;
      e[j * n + i] = v;
    }
  }
  return Matrix<T>(n, n, std::move(e));
}

template <Scalar T>
Matrix<T> solve(const Matrix<T>& m, const Matrix<T>& rhs) {
  require_square(m.rows(), m.cols(), "solve");
  if (rhs.rows() != m.rows()) throw Error(ErrorKind::dimension, "solve: right-hand side row mismatch");
  if constexpr (is_exact_v<T>) {
    return gauss_jordan_solve(m, rhs);
  } else {
    return lu_solve(m, rhs);
  }
}

template <Scalar T>
ColVector<T> solve(const Matrix<T>& m, const ColVector<T>& rhs) {
  return solve(m, Matrix<T>::column(rhs)).col(0);
}

template <Scalar T>
Matrix<T> inverse(const Matrix<T>& m) {
  require_square(m.rows(), m.cols(), "inverse");
  return solve(m, Matrix<T>::identity(m.rows()));
}

template <Scalar T>
T det_rank_one_like_update(const Matrix<T>& r, const Matrix<T>& s, const Matrix<T>& t,
                           const Matrix<T>& u) {
  require_square(r.rows(), r.cols(), "det_rank_one_like_update (R)");
  require_square(t.rows(), t.cols(), "det_rank_one_like_update (T)");
  const std::size_t n = r.rows();
  const std::size_t m = t.rows();
  if (s.rows() != n || s.cols() != m || u.rows() != m || u.cols() != n) {
    throw Error(ErrorKind::dimension, "det_rank_one_like_update: operand shapes disagree");
  }
  const Matrix<T> r_inv_s = solve(r, s);
  const Matrix<T> t_inv = inverse(t);
  const Matrix<T> core = t_inv + u * r_inv_s;
  return T(determinant(r) * determinant(t) * determinant(core));
}

template <Scalar T>
Matrix<T> inv_rank_one_update(const Matrix<T>& r, const ColVector<T>& s, const ColVector<T>& u) {
  require_square(r.rows(), r.cols(), "inv_rank_one_update");
  if (s.dim() != r.rows() || u.dim() != r.rows()) {
    throw Error(ErrorKind::dimension, "inv_rank_one_update: vector dimension mismatch");
  }
  const Matrix<T> r_inv = inverse(r);
  const ColVector<T> r_inv_s = r_inv * s;
  const ColVector<T> ut_r_inv = r_inv.transpose() * u;
  const T ut_r_inv_s = dot(u, r_inv_s);
  const T denom = T(1) + ut_r_inv_s;

  bool singular_update = false;
  if constexpr (is_exact_v<T>) {
    singular_update = is_zero(denom);
  } else {
    singular_update = magnitude(denom) <= kPivotTolerance * std::max(1.0, magnitude(ut_r_inv_s));
  }
  if (singular_update) {
    throw Error(ErrorKind::update_singular, "inv_rank_one_update: u^T R^-1 s = -1");
  }
  const T coeff = T(1) / denom;
  return r_inv - coeff * outer(r_inv_s, ut_r_inv);
}

template <Scalar T>
Matrix<T> schur_complement(const Matrix<T>& m, std::size_t k) {
  require_square(m.rows(), m.cols(), "schur_complement");
  if (k > m.rows()) throw Error(ErrorKind::dimension, "schur_complement: block larger than matrix");
  const std::size_t rest = m.rows() - k;
  const Matrix<T> a = m.block(0, 0, k, k);
  const Matrix<T> b = m.block(0, k, k, rest);
  const Matrix<T> c = m.block(k, 0, rest, k);
  const Matrix<T> d = m.block(k, k, rest, rest);
  if (k == 0) return d;
  return d - c * solve(a, b);
}

#define QUADHESS_INSTANTIATE_LINALG(T)                                                         \
  template T determinant(const Matrix<T>&);                                                    \
  template Matrix<T> symmetric_part(const Matrix<T>&);                                         \
  template Matrix<T> inverse(const Matrix<T>&);                                                \
  template Matrix<T> solve(const Matrix<T>&, const Matrix<T>&);                                \
  template ColVector<T> solve(const Matrix<T>&, const ColVector<T>&);                          \
  template T det_rank_one_like_update(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&,    \
                                      const Matrix<T>&);                                       \
  template Matrix<T> inv_rank_one_update(const Matrix<T>&, const ColVector<T>&,                \
                                         const ColVector<T>&);                                 \
  template Matrix<T> schur_complement(const Matrix<T>&, std::size_t);

QUADHESS_INSTANTIATE_LINALG(Rational)
QUADHESS_INSTANTIATE_LINALG(Real)
QUADHESS_INSTANTIATE_LINALG(Complex)

#undef QUADHESS_INSTANTIATE_LINALG

}  // namespace quadhess
