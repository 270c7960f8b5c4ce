#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "quadhess/quadric.hpp"

// Both sides of |∓H_y(x)|·Δ_y(x)^{n/2+1} = −|Q + Qᵀ| and the intermediate
// quantities that connect them.

namespace quadhess {

inline constexpr double kDefaultFloatTolerance = 1e-8;

/// −det(raw_q + raw_qᵀ).
template <Scalar T>
T rhs_value(const QuadricSurface<T>& q);

/// Square-root-free left-hand side:
///   (−s)ⁿ·(8d)^{−n}·Δ^{1−n}·det(s·(−16Δ·Λ − ggᵀ)),  g = ∇Δ_y, s = ±1.
/// Needs d ≠ 0 and Δ_y ≠ 0 (Δ_y > 0 for the real kinds). Λ may be singular.
template <Scalar T>
T lhs_exact(const BlockParts<T>& parts, const DiscriminantData<T>& dd, const ColVector<T>& x,
            BranchSign branch);

/// det(∓H_y)·Δ_y^{n/2+1} in floating arithmetic with the principal root.
/// With d = 0 the Hessian comes from implicit differentiation at the single
/// finite root and the sign is the one the d → 0 limit selects.
template <FloatingScalar T>
T lhs_float(const BlockParts<T>& parts, const DiscriminantData<T>& dd, const ColVector<T>& x,
            BranchSign branch);

/// Δ^{n/2+1}, taking the principal root for odd n.
template <FloatingScalar T>
T discriminant_power(const T& delta, std::size_t n);

template <Scalar T>
struct XiValue {
  T value;
};

/// Determinant of the 2×2 Schur complement of A in sym_q:
///   det[[d − bᵀA⁻¹b, e − bᵀA⁻¹c], [e − cᵀA⁻¹b, f − cᵀA⁻¹c]].
template <Scalar T>
XiValue<T> xi(const BlockParts<T>& parts);

template <Scalar T>
struct SidePair {
  T lhs;
  T rhs;
};

/// (det(sym_q), det(A)·ξ). Throws singular if A is.
template <Scalar T>
SidePair<T> schur_det_factorization(const QuadricSurface<T>& q, const BlockParts<T>& parts);

/// (−8)ⁿ·d^{n−1}·|A|·(d − bᵀA⁻¹b), the lemma route to det(∇⊗∇Δ_y) = det(−8Λ).
template <Scalar T>
T discriminant_hessian_det(const BlockParts<T>& parts, const DiscriminantData<T>& dd);

/// 2Δ_y − gᵀ(−8Λ)⁻¹g evaluated literally at x. Constant in x.
template <Scalar T>
T gradient_form(const BlockParts<T>& parts, const DiscriminantData<T>& dd, const ColVector<T>& x);

/// −8ν + 8μᵀΛ⁻¹μ.
template <Scalar T>
T gradient_form_constant(const DiscriminantData<T>& dd);

/// lhs: det(−8Λ)·gradient_form(x); rhs: (−8)^{n+1}·dⁿ·det(sym_q).
template <Scalar T>
SidePair<T> determinant_bracket(const BlockParts<T>& parts, const DiscriminantData<T>& dd,
                                const ColVector<T>& x, const QuadricSurface<T>& q);

/// lhs: d(d − bᵀA⁻¹b)(ν − μᵀΛ⁻¹μ); rhs: d²·ξ.
template <Scalar T>
SidePair<T> xi_bracket(const BlockParts<T>& parts, const DiscriminantData<T>& dd);

template <Scalar T>
struct Checkpoint {
  std::string label;
  bool defined = false;
  bool two_sided = true;
  T lhs{};
  T rhs{};
  bool agrees = false;
  std::string note;  // why the checkpoint is undefined
};

/// Every intermediate quantity that is well defined for the instance.
/// Undefined ones (singular A or Λ, d = 0, ...) are kept with a note.
/// Floating kinds compare with |lhs − rhs| <= tol·max(1, |rhs|).
template <Scalar T>
std::vector<Checkpoint<T>> proof_checkpoints(const QuadricSurface<T>& q, const ColVector<T>& x,
                                             double tol = kDefaultFloatTolerance);

enum class VerifyStatus { verified, skipped, failed };
const char* to_string(VerifyStatus s) noexcept;

template <Scalar T>
using Discrepancy = std::conditional_t<is_exact_v<T>, Rational, double>;

template <Scalar T>
struct VerificationReport {
  ScalarKind mode = kind_of<T>;
  BranchSign branch = BranchSign::plus;
  ColVector<T> point;
  std::optional<T> lhs;
  std::optional<T> rhs;
  std::optional<Discrepancy<T>> discrepancy;
  std::vector<Checkpoint<T>> checkpoints;
  VerifyStatus status = VerifyStatus::skipped;
  std::string reason;  // filled for skipped records

  bool passed() const noexcept { return status == VerifyStatus::verified; }
};

/// Evaluates both sides at (x, branch). The mode follows T: exact for
/// rationals (zero tolerance), float/complex otherwise. Precondition
/// failures come back as skipped reports instead of exceptions.
template <Scalar T>
VerificationReport<T> verify_identity(const QuadricSurface<T>& q, const ColVector<T>& x,
                                      BranchSign branch, double tol = kDefaultFloatTolerance,
                                      bool with_checkpoints = true);

}  // namespace quadhess
