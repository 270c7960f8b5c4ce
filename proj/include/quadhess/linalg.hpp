#pragma once

#include "quadhess/matrix.hpp"

namespace quadhess {

/// A floating pivot counts as zero when |pivot| <= this factor times the
/// largest magnitude in the pivot's original row.
inline constexpr double kPivotTolerance = 1e-12;

/// det(M). Exact kind: rows are cleared of denominators and reduced with
/// fraction-free (Bareiss) elimination over the integers. Floating kinds:
/// LU with partial pivoting by magnitude. Throws dimension error if M is not
/// square.
template <Scalar T>
T determinant(const Matrix<T>& m);

/// (Q + Qᵀ)/2, built from the upper triangle and mirrored so the result is
/// symmetric entry-for-entry in every kind.
template <Scalar T>
Matrix<T> symmetric_part(const Matrix<T>& q);

/// M⁻¹ by Gauss-Jordan (exact) or pivoted LU (floating). Throws singular.
template <Scalar T>
Matrix<T> inverse(const Matrix<T>& m);

/// Solves M·X = B for X.
template <Scalar T>
Matrix<T> solve(const Matrix<T>& m, const Matrix<T>& rhs);

template <Scalar T>
ColVector<T> solve(const Matrix<T>& m, const ColVector<T>& rhs);

/// |R + S·T·U| evaluated as |R|·|T|·|T⁻¹ + U·R⁻¹·S|.
///
/// R is n×n, S is n×m, T is m×m and U is m×n. R and T must be nonsingular
/// (singular error otherwise); shape mismatches raise dimension errors.
template <Scalar T>
T det_rank_one_like_update(const Matrix<T>& r, const Matrix<T>& s, const Matrix<T>& t,
                           const Matrix<T>& u);

/// (R + s·uᵀ)⁻¹ = R⁻¹ − (1 + uᵀR⁻¹s)⁻¹·R⁻¹s·uᵀR⁻¹.
///
/// Throws singular when R is singular and update_singular when
/// uᵀR⁻¹s = −1 (floating kinds: |1 + uᵀR⁻¹s| within kPivotTolerance of zero,
/// relative to max(1, |uᵀR⁻¹s|)).
template <Scalar T>
Matrix<T> inv_rank_one_update(const Matrix<T>& r, const ColVector<T>& s, const ColVector<T>& u);

/// Schur complement D − C·A⁻¹·B of the leading k×k block A of a square M
/// partitioned as [[A, B], [C, D]].
template <Scalar T>
Matrix<T> schur_complement(const Matrix<T>& m, std::size_t k);

}  // namespace quadhess
