#pragma once

#include <cstddef>

#include "quadhess/linalg.hpp"
#include "quadhess/matrix.hpp"

namespace quadhess {

/// Which root of the quadratic in y the graph follows: plus takes +√Δ_y.
enum class BranchSign { plus, minus };

inline int sign_value(BranchSign b) noexcept { return b == BranchSign::plus ? 1 : -1; }
inline BranchSign opposite(BranchSign b) noexcept {
  return b == BranchSign::plus ? BranchSign::minus : BranchSign::plus;
}
const char* to_string(BranchSign b) noexcept;

/// Hypersurface {(x, y) : v(x,y)ᵀ·Q·v(x,y) = 0} with v = (x, y, 1) and x in
/// n dimensions. Holds the raw (n+2)×(n+2) Q and its symmetric part.
template <Scalar T>
class QuadricSurface {
 public:
  explicit QuadricSurface(Matrix<T> raw_q)
      : raw_q_(std::move(raw_q)), sym_q_(symmetric_part(raw_q_)) {
    if (raw_q_.rows() < 3) throw Error(ErrorKind::dimension, "quadric needs n >= 1");
  }

  std::size_t n() const noexcept { return raw_q_.rows() - 2; }
  const Matrix<T>& raw_q() const noexcept { return raw_q_; }
  const Matrix<T>& sym_q() const noexcept { return sym_q_; }

 private:
  Matrix<T> raw_q_;
  Matrix<T> sym_q_;
};

template <Scalar To>
QuadricSurface<To> convert(const QuadricSurface<Rational>& q) {
  return QuadricSurface<To>(convert<To>(q.raw_q()));
}

/// sym_q = [[A, b, c], [bᵀ, d, e], [cᵀ, e, f]].
template <Scalar T>
struct BlockParts {
  Matrix<T> a;
  ColVector<T> b;
  ColVector<T> c;
  T d;
  T e;
  T f;

  std::size_t n() const noexcept { return a.rows(); }
};

/// Coefficients of Δ_y(x) = −4xᵀΛx + 8μᵀx − 4ν.
template <Scalar T>
struct DiscriminantData {
  Matrix<T> lambda;  // dA − bbᵀ
  ColVector<T> mu;   // eb − dc
  T nu;              // df − e²
};

/// a·y² + b2·y + c0 at a fixed x.
template <Scalar T>
struct QuadraticInY {
  T a;
  T b2;
  T c0;
};

template <Scalar T>
BlockParts<T> decompose(const QuadricSurface<T>& q);

/// Inverse of decompose: the symmetric (n+2)×(n+2) matrix built from parts.
template <Scalar T>
Matrix<T> reassemble(const BlockParts<T>& parts);

/// v(x,y)ᵀ·raw_q·v(x,y).
template <Scalar T>
T eval_quadric(const QuadricSurface<T>& q, const ColVector<T>& x, const T& y);

template <Scalar T>
QuadraticInY<T> quadratic_in_y(const BlockParts<T>& parts, const ColVector<T>& x);

template <Scalar T>
DiscriminantData<T> discriminant_data(const BlockParts<T>& parts);

template <Scalar T>
T discriminant_value(const DiscriminantData<T>& dd, const ColVector<T>& x);

/// ∇Δ_y = −8Λx + 8μ.
template <Scalar T>
ColVector<T> discriminant_gradient(const DiscriminantData<T>& dd, const ColVector<T>& x);

/// y = (−2(bᵀx+e) ± √Δ_y)/(2d).
///
/// Errors: d = 0 (degenerate_leading_coefficient), Δ_y < 0 for the real
/// kinds (no_real_solution), Δ_y not a rational square in the exact kind
/// (irrational_root).
template <Scalar T>
T solve_y(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch);

/// ∇y = (−b ± (−2Λx + 2μ)/√Δ_y)/d. Requires Δ_y > 0 (real kinds) or
/// Δ_y ≠ 0 (complex).
template <Scalar T>
ColVector<T> gradient_y(const BlockParts<T>& parts, const DiscriminantData<T>& dd,
                        const ColVector<T>& x, BranchSign branch);

/// H_y = ±(−16Δ_y·Λ − ggᵀ)/(8d·Δ_y^{3/2}) with g = ∇Δ_y. Same preconditions
/// as gradient_y. The result is symmetric entry-for-entry.
template <Scalar T>
Matrix<T> hessian_y(const BlockParts<T>& parts, const DiscriminantData<T>& dd,
                    const ColVector<T>& x, BranchSign branch);

}  // namespace quadhess
