#pragma once

#include <cstddef>
#include <cstdint>

#include "quadhess/matrix.hpp"
#include "quadhess/quadric.hpp"

// Ground-truth machinery kept independent of the closed-form derivative
// formulas: finite differences, implicit differentiation of F(x, y), Laplace
// expansion, and the seeded instance generator.

namespace quadhess {

inline constexpr double kGradientStep = 1e-5;
inline constexpr double kHessianStep = 1e-4;

/// Central finite-difference settings.
class FdConfig {
 public:
  explicit FdConfig(double step);
  double step() const noexcept { return step_; }

 private:
  double step_;
};

/// y(x) on the requested branch. For d = 0 the quadratic is linear in y and
/// the single root −c0/b2 is returned, ignoring the branch.
template <FloatingScalar T>
T graph_value(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch);

template <FloatingScalar T>
ColVector<T> fd_gradient(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch,
                         const FdConfig& cfg = FdConfig(kGradientStep));

/// Second differences: three-point on the diagonal, four-point cross stencil
/// off it. Output is symmetrized.
template <FloatingScalar T>
Matrix<T> fd_hessian(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch,
                     const FdConfig& cfg = FdConfig(kHessianStep));

/// Number of graph_value calls fd_hessian makes in dimension n.
constexpr std::size_t fd_hessian_root_evaluations(std::size_t n) { return 2 * n * n + 1; }

template <Scalar T>
struct ImplicitDerivatives {
  ColVector<T> grad;
  Matrix<T> hess;
};

/// Gradient and Hessian of the local graph function through (x, y0), from
/// F(x, y) = vᵀ·sym_q·v by implicit differentiation. Works for d = 0.
///
/// Throws residual if (x, y0) is off the surface (|F| > 1e-9 relative to the
/// term scale; exact kind requires F = 0) and vertical_tangent if ∂F/∂y
/// vanishes.
template <Scalar T>
ImplicitDerivatives<T> implicit_derivatives(const QuadricSurface<T>& q, const ColVector<T>& x,
                                            const T& y0);

/// Laplace expansion along the first row. Limited to 7×7 (size error).
template <Scalar T>
T cofactor_det(const Matrix<T>& m);

inline constexpr std::size_t kCofactorMaxSize = 7;
inline constexpr int kMaxGenerationAttempts = 10000;

/// Random instance settings. See README for the exact sampling procedure.
struct GenConfig {
  std::size_t n = 1;
  std::uint64_t seed = 0;
  std::int64_t entry_range = 5;    // Q entries: integers in [-B, B], ...
  bool use_denominators = true;    // ... each divided by a draw from 1..B
  std::int64_t point_range = 3;    // point coordinates: integers in [-P, P], ...
  bool point_denominators = true;  // ... each divided by a draw from 1..P
  bool require_d_nonzero = true;
  bool require_positive_discriminant = true;
  double min_discriminant = 0.0;  // |Δ_y(x)| must exceed this (Δ_y > it for real)
  double max_point_norm = 0.0;    // reject points with ‖x‖₂ above this; 0 = no limit
  bool force_d_zero = false;
  bool force_singular = false;  // sym_q of rank at most n+1
  bool asymmetric_raw = false;  // raw Q not symmetric (sym_q unchanged in law)
};

/// Moderate entries, points with ‖x‖ <= 2 and Δ_y(x) >= 4: a regime where
/// central differences at the default steps resolve the Hessian to ~1e-5.
GenConfig well_conditioned_config(std::size_t n, std::uint64_t seed);

template <Scalar T>
struct Instance {
  QuadricSurface<T> q;
  ColVector<T> x;
};

/// Deterministic for a given config; throws generation_exhausted after
/// kMaxGenerationAttempts rejected draws.
Instance<Rational> random_quadric(const GenConfig& cfg);

/// Complex entries: real and imaginary parts drawn like random_quadric's.
Instance<Complex> random_complex_quadric(const GenConfig& cfg);

/// Per-task seed so parallel workers never share a generator stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace quadhess
