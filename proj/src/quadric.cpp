#include "quadhess/quadric.hpp"

#include <vector>

namespace quadhess {

const char* to_string(BranchSign b) noexcept { return b == BranchSign::plus ? "plus" : "minus"; }

namespace {

template <Scalar T>
void require_dim(const ColVector<T>& x, std::size_t n, const char* what) {
  if (x.dim() != n) {
    throw Error(ErrorKind::dimension, std::string(what) + ": point has dimension " +
                                          std::to_string(x.dim()) + ", expected " +
                                          std::to_string(n));
  }
}

template <Scalar T>
void require_leading(const BlockParts<T>& parts) {
  if (is_zero(parts.d)) {
    throw Error(ErrorKind::degenerate_leading_coefficient,
                "d = 0: the quadratic in y is degenerate; use the implicit path");
  }
}

// Δ_y must admit a branch root. Real kinds reject negative values; the
// derivative formulas additionally need Δ_y away from zero.
template <Scalar T>
void require_discriminant(const T& delta, bool strictly_nonzero) {
  if constexpr (kind_of<T> != ScalarKind::complex) {
    if (delta < 0) {
      throw Error(ErrorKind::no_real_solution,
                  "discriminant " + format_scalar(delta) + " < 0: no real branch");
    }
  }
  if (strictly_nonzero && is_zero(delta)) {
    throw Error(ErrorKind::on_discriminant_locus, "discriminant vanishes at this point");
  }
}

}  // namespace

template <Scalar T>
BlockParts<T> decompose(const QuadricSurface<T>& q) {
  const std::size_t n = q.n();
  const Matrix<T>& s = q.sym_q();
  return BlockParts<T>{
      s.block(0, 0, n, n),
      ColVector<T>::generate(n, [&](std::size_t i) { return s(i, n); }),
      ColVector<T>::generate(n, [&](std::size_t i) { return s(i, n + 1); }),
      s(n, n),
      s(n, n + 1),
      s(n + 1, n + 1),
  };
}

template <Scalar T>
Matrix<T> reassemble(const BlockParts<T>& parts) {
  const std::size_t n = parts.n();
  return Matrix<T>::generate(n + 2, n + 2, [&](std::size_t i, std::size_t j) -> T {
    if (i < n && j < n) return parts.a(i, j);
    if (i < n) return j == n ? parts.b[i] : parts.c[i];
    if (j < n) return i == n ? parts.b[j] : parts.c[j];
    if (i == n && j == n) return parts.d;
    if (i == n + 1 && j == n + 1) return parts.f;
    return parts.e;
  });
}

template <Scalar T>
T eval_quadric(const QuadricSurface<T>& q, const ColVector<T>& x, const T& y) {
  const std::size_t n = q.n();
  require_dim(x, n, "eval_quadric");
  std::vector<T> v(x.entries().begin(), x.entries().end());
  v.push_back(y);
  v.push_back(T(1));
  const ColVector<T> aug(std::move(v));
  return bilinear(aug, q.raw_q(), aug);
}

template <Scalar T>
QuadraticInY<T> quadratic_in_y(const BlockParts<T>& parts, const ColVector<T>& x) {
  require_dim(x, parts.n(), "quadratic_in_y");
  const T btx_e = dot(parts.b, x) + parts.e;
  const T c0 = bilinear(x, parts.a, x) + T(2) * dot(parts.c, x) + parts.f;
  return QuadraticInY<T>{parts.d, T(2) * btx_e, c0};
}

template <Scalar T>
DiscriminantData<T> discriminant_data(const BlockParts<T>& parts) {
  // Λ is built from the upper triangle so it stays symmetric in every kind.
  const std::size_t n = parts.n();
  std::vector<T> lam(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      T v = parts.d * parts.a(i, j) - parts.b[i] * parts.b[j];
      lam[i * n + j] = v;
      lam[j * n + i] = v;
    }
  return DiscriminantData<T>{
      Matrix<T>(n, n, std::move(lam)),
      parts.e * parts.b - parts.d * parts.c,
      T(parts.d * parts.f - parts.e * parts.e),
  };
}

template <Scalar T>
T discriminant_value(const DiscriminantData<T>& dd, const ColVector<T>& x) {
  require_dim(x, dd.lambda.rows(), "discriminant_value");
  return T(T(-4) * bilinear(x, dd.lambda, x) + T(8) * dot(dd.mu, x) - T(4) * dd.nu);
}

template <Scalar T>
ColVector<T> discriminant_gradient(const DiscriminantData<T>& dd, const ColVector<T>& x) {
  require_dim(x, dd.lambda.rows(), "discriminant_gradient");
  return T(8) * (dd.mu - dd.lambda * x);
}

template <Scalar T>
T solve_y(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch) {
  require_dim(x, parts.n(), "solve_y");
  require_leading(parts);
  const QuadraticInY<T> quad = quadratic_in_y(parts, x);
  const T delta = quad.b2 * quad.b2 - T(4) * quad.a * quad.c0;
  require_discriminant(delta, false);
  const T root = principal_sqrt(delta);
  const T signed_root = branch == BranchSign::plus ? root : T(-root);
  return T((signed_root - quad.b2) / (T(2) * parts.d));
}

template <Scalar T>
ColVector<T> gradient_y(const BlockParts<T>& parts, const DiscriminantData<T>& dd,
                        const ColVector<T>& x, BranchSign branch) {
  require_dim(x, parts.n(), "gradient_y");
  require_leading(parts);
  const T delta = discriminant_value(dd, x);
  require_discriminant(delta, true);
  const T root = principal_sqrt(delta);
  const T s(sign_value(branch));
  // (−2Λx + 2μ) is ∇Δ_y / 4.
  const ColVector<T> quarter_grad = T(2) * (dd.mu - dd.lambda * x);
  const T scale = s / root;
  const T inv_d = T(1) / parts.d;
  return ColVector<T>::generate(parts.n(), [&](std::size_t i) -> T {
    return (scale * quarter_grad[i] - parts.b[i]) * inv_d;
  });
}

template <Scalar T>
Matrix<T> hessian_y(const BlockParts<T>& parts, const DiscriminantData<T>& dd,
                    const ColVector<T>& x, BranchSign branch) {
  require_dim(x, parts.n(), "hessian_y");
  require_leading(parts);
  const T delta = discriminant_value(dd, x);
  require_discriminant(delta, true);
  const T root = principal_sqrt(delta);
  const ColVector<T> g = discriminant_gradient(dd, x);
  const T factor = T(sign_value(branch)) / (T(8) * parts.d * delta * root);

  const std::size_t n = parts.n();
  std::vector<T> h(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      T v = factor * (T(-16) * delta * dd.lambda(i, j) - g[i] * g[j]);
      h[i * n + j] = v;
      h[j * n + i] = v;
    }
  return Matrix<T>(n, n, std::move(h));
}

#define QUADHESS_INSTANTIATE_QUADRIC(T)                                                        \
  template BlockParts<T> decompose(const QuadricSurface<T>&);                                  \
  template Matrix<T> reassemble(const BlockParts<T>&);                                         \
  template T eval_quadric(const QuadricSurface<T>&, const ColVector<T>&, const T&);            \
  template QuadraticInY<T> quadratic_in_y(const BlockParts<T>&, const ColVector<T>&);          \
  template DiscriminantData<T> discriminant_data(const BlockParts<T>&);                        \
  template T discriminant_value(const DiscriminantData<T>&, const ColVector<T>&);              \
  template ColVector<T> discriminant_gradient(const DiscriminantData<T>&, const ColVector<T>&); \
  template T solve_y(const BlockParts<T>&, const ColVector<T>&, BranchSign);                   \
  template ColVector<T> gradient_y(const BlockParts<T>&, const DiscriminantData<T>&,           \
                                   const ColVector<T>&, BranchSign);                           \
  template Matrix<T> hessian_y(const BlockParts<T>&, const DiscriminantData<T>&,               \
                               const ColVector<T>&, BranchSign);

QUADHESS_INSTANTIATE_QUADRIC(Rational)
QUADHESS_INSTANTIATE_QUADRIC(Real)
QUADHESS_INSTANTIATE_QUADRIC(Complex)

#undef QUADHESS_INSTANTIATE_QUADRIC

}  // namespace quadhess
