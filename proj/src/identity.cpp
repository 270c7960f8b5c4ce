#include "quadhess/identity.hpp"

#include "quadhess/oracle.hpp"

namespace quadhess {

const char* to_string(VerifyStatus s) noexcept {
  switch (s) {
    case VerifyStatus::verified: return "verified";
    case VerifyStatus::skipped: return "skipped";
    case VerifyStatus::failed: return "failed";
  }
  return "unknown";
}

namespace {

template <Scalar T>
void require_nonzero_d(const BlockParts<T>& parts) {
  if (is_zero(parts.d)) {
    throw Error(ErrorKind::degenerate_leading_coefficient, "d = 0: no branch formula");
  }
}

template <Scalar T>
void require_branch_discriminant(const T& delta) {
  if constexpr (kind_of<T> != ScalarKind::complex) {
    if (delta < 0) {
      throw Error(ErrorKind::no_real_solution,
                  "discriminant " + format_scalar(delta) + " < 0: no real branch");
    }
  }
  if (is_zero(delta)) {
    throw Error(ErrorKind::on_discriminant_locus, "discriminant vanishes at this point");
  }
}

template <Scalar T>
bool sides_agree(const T& lhs, const T& rhs, double tol) {
  if constexpr (is_exact_v<T>) {
    return lhs == rhs;
  } else {
    return magnitude(T(lhs - rhs)) <= tol * std::max(1.0, magnitude(rhs));
  }
}

// bᵀA⁻¹b style quadratic forms through one solve with A.
template <Scalar T>
struct SchurTerms {
  T det_a;
  T bb;  // bᵀA⁻¹b
  T bc;  // bᵀA⁻¹c
  T cb;  // cᵀA⁻¹b
  T cc;  // cᵀA⁻¹c
};

template <Scalar T>
SchurTerms<T> schur_terms(const BlockParts<T>& parts) {
  const T det_a = determinant(parts.a);
  if (is_zero(det_a)) throw Error(ErrorKind::singular, "A is singular");
  const ColVector<T> a_inv_b = solve(parts.a, parts.b);
  const ColVector<T> a_inv_c = solve(parts.a, parts.c);
  return SchurTerms<T>{det_a, dot(parts.b, a_inv_b), dot(parts.b, a_inv_c),
                       dot(parts.c, a_inv_b), dot(parts.c, a_inv_c)};
}

template <Scalar T>
T lambda_form(const DiscriminantData<T>& dd, const ColVector<T>& v) {
  if (is_zero(determinant(dd.lambda))) throw Error(ErrorKind::singular, "Lambda is singular");
  return dot(v, solve(dd.lambda, v));
}

}  // namespace

template <Scalar T>
T rhs_value(const QuadricSurface<T>& q) {
  return T(-determinant(q.raw_q() + q.raw_q().transpose()));
}

template <Scalar T>
T lhs_exact(const BlockParts<T>& parts, const DiscriminantData<T>& dd, const ColVector<T>& x,
            BranchSign branch) {
  require_nonzero_d(parts);
  const T delta = discriminant_value(dd, x);
  require_branch_discriminant(delta);
  const ColVector<T> g = discriminant_gradient(dd, x);
  const T s(sign_value(branch));
  const int n = static_cast<int>(parts.n());

  // s·(−16ΔΛ − ggᵀ) is the numerator of H_y over 8dΔ^{3/2}.
  const Matrix<T> signed_numerator = s * (T(T(-16) * delta) * dd.lambda - outer(g, g));
  const T sign_factor = ipow(T(-s), n);
  return T(sign_factor * ipow(T(T(8) * parts.d), -n) * ipow(delta, 1 - n) *
           determinant(signed_numerator));
}

template <FloatingScalar T>
T discriminant_power(const T& delta, std::size_t n) {
  const int half = static_cast<int>(n / 2);
  T out = ipow(delta, half + 1);
  if (n % 2 == 1) out *= principal_sqrt(delta);
  return out;
}

template <FloatingScalar T>
T lhs_float(const BlockParts<T>& parts, const DiscriminantData<T>& dd, const ColVector<T>& x,
            BranchSign branch) {
  const T delta = discriminant_value(dd, x);
  if constexpr (kind_of<T> == ScalarKind::real) {
    if (delta <= 0) {
      throw Error(ErrorKind::no_real_solution,
                  "discriminant " + format_scalar(delta) + " <= 0: no real branch");
    }
  } else if (is_zero(delta)) {
    throw Error(ErrorKind::on_discriminant_locus, "discriminant vanishes at this point");
  }

  const std::size_t n = parts.n();
  Matrix<T> hess;
  T opposite_sign(-sign_value(branch));
  if (!is_zero(parts.d)) {
    hess = hessian_y(parts, dd, x, branch);
  } else {
    const T y0 = graph_value(parts, x, branch);
    const QuadricSurface<T> surface(reassemble(parts));
    hess = implicit_derivatives(surface, x, y0).hess;
    // With d = 0, Δ = b2² and the surviving root is the branch whose
    // principal √Δ equals b2.
    const T b2 = quadratic_in_y(parts, x).b2;
    const T root = principal_sqrt(delta);
    const int limit_sign = magnitude(T(root - b2)) <= magnitude(T(root + b2)) ? 1 : -1;
    opposite_sign = T(-limit_sign);
  }
  return determinant(opposite_sign * hess) * discriminant_power(delta, n);
}

template <Scalar T>
XiValue<T> xi(const BlockParts<T>& parts) {
  const SchurTerms<T> t = schur_terms(parts);
  const T top_left = parts.d - t.bb;
  const T top_right = parts.e - t.bc;
  const T bottom_left = parts.e - t.cb;
  const T bottom_right = parts.f - t.cc;
  return XiValue<T>{T(top_left * bottom_right - top_right * bottom_left)};
}

template <Scalar T>
SidePair<T> schur_det_factorization(const QuadricSurface<T>& q, const BlockParts<T>& parts) {
  const XiValue<T> x = xi(parts);
  return SidePair<T>{determinant(q.sym_q()), T(determinant(parts.a) * x.value)};
}

template <Scalar T>
T discriminant_hessian_det(const BlockParts<T>& parts, const DiscriminantData<T>&) {
  require_nonzero_d(parts);
  const SchurTerms<T> t = schur_terms(parts);
  const int n = static_cast<int>(parts.n());
  return T(ipow(T(-8), n) * ipow(parts.d, n - 1) * t.det_a * (parts.d - t.bb));
}

template <Scalar T>
T gradient_form(const BlockParts<T>&, const DiscriminantData<T>& dd, const ColVector<T>& x) {
  const T delta = discriminant_value(dd, x);
  const ColVector<T> g = discriminant_gradient(dd, x);
  const Matrix<T> disc_hessian = T(-8) * dd.lambda;
  if (is_zero(determinant(disc_hessian))) throw Error(ErrorKind::singular, "Lambda is singular");
  return T(T(2) * delta - dot(g, solve(disc_hessian, g)));
}

template <Scalar T>
T gradient_form_constant(const DiscriminantData<T>& dd) {
  return T(T(-8) * dd.nu + T(8) * lambda_form(dd, dd.mu));
}

template <Scalar T>
SidePair<T> determinant_bracket(const BlockParts<T>& parts, const DiscriminantData<T>& dd,
                                const ColVector<T>& x, const QuadricSurface<T>& q) {
  require_nonzero_d(parts);
  const int n = static_cast<int>(parts.n());
  const T lhs = determinant(Matrix<T>(T(-8) * dd.lambda)) * gradient_form(parts, dd, x);
  const T rhs = ipow(T(-8), n + 1) * ipow(parts.d, n) * determinant(q.sym_q());
  return SidePair<T>{lhs, rhs};
}

template <Scalar T>
SidePair<T> xi_bracket(const BlockParts<T>& parts, const DiscriminantData<T>& dd) {
  require_nonzero_d(parts);
  const SchurTerms<T> t = schur_terms(parts);
  const T lhs = parts.d * (parts.d - t.bb) * (dd.nu - lambda_form(dd, dd.mu));
  const T rhs = parts.d * parts.d * xi(parts).value;
  return SidePair<T>{lhs, rhs};
}

template <Scalar T>
std::vector<Checkpoint<T>> proof_checkpoints(const QuadricSurface<T>& q, const ColVector<T>& x,
                                             double tol) {
  const BlockParts<T> parts = decompose(q);
  const DiscriminantData<T> dd = discriminant_data(parts);
  std::vector<Checkpoint<T>> out;

  auto record = [&](const char* label, bool two_sided, auto&& compute) {
    Checkpoint<T> cp;
    cp.label = label;
    cp.two_sided = two_sided;
    try {
      const SidePair<T> sides = compute();
      cp.lhs = sides.lhs;
      cp.rhs = sides.rhs;
      cp.defined = true;
      cp.agrees = sides_agree(cp.lhs, cp.rhs, tol);
    } catch (const Error& err) {
      cp.note = std::string(to_string(err.kind())) + ": " + err.what();
    }
    out.push_back(std::move(cp));
  };

  record("disc_hessian_det", true, [&] {
    return SidePair<T>{discriminant_hessian_det(parts, dd),
                       determinant(Matrix<T>(T(-8) * dd.lambda))};
  });
  record("gradient_form", true, [&] {
    return SidePair<T>{gradient_form(parts, dd, x), gradient_form_constant(dd)};
  });
  record("bracket_det_q", true, [&] { return determinant_bracket(parts, dd, x, q); });
  record("bracket_xi", true, [&] { return xi_bracket(parts, dd); });
  record("xi", false, [&] {
    const T v = xi(parts).value;
    return SidePair<T>{v, v};
  });
  record("schur_det", true, [&] { return schur_det_factorization(q, parts); });
  return out;
}

template <Scalar T>
VerificationReport<T> verify_identity(const QuadricSurface<T>& q, const ColVector<T>& x,
                                      BranchSign branch, double tol, bool with_checkpoints) {
  VerificationReport<T> report;
  report.branch = branch;
  report.point = x;
  try {
    if (x.dim() != q.n()) {
      throw Error(ErrorKind::dimension, "point has dimension " + std::to_string(x.dim()) +
                                            ", quadric has n = " + std::to_string(q.n()));
    }
    const BlockParts<T> parts = decompose(q);
    const DiscriminantData<T> dd = discriminant_data(parts);
    const T rhs = rhs_value(q);
    T lhs;
    if constexpr (is_exact_v<T>) {
      lhs = lhs_exact(parts, dd, x, branch);
    } else {
      lhs = lhs_float(parts, dd, x, branch);
    }
    report.lhs = lhs;
    report.rhs = rhs;
    if constexpr (is_exact_v<T>) {
      report.discrepancy = Rational(abs(lhs - rhs));
    } else {
      report.discrepancy = magnitude(T(lhs - rhs));
    }
    report.status = sides_agree(lhs, rhs, tol) ? VerifyStatus::verified : VerifyStatus::failed;
    if (with_checkpoints) report.checkpoints = proof_checkpoints(q, x, tol);
  } catch (const Error& err) {
    report.status = VerifyStatus::skipped;
    report.reason = std::string(to_string(err.kind())) + ": " + err.what();
  }
  return report;
}

#define QUADHESS_INSTANTIATE_IDENTITY(T)                                                        \
  template T rhs_value(const QuadricSurface<T>&);                                               \
  template T lhs_exact(const BlockParts<T>&, const DiscriminantData<T>&, const ColVector<T>&,   \
                       BranchSign);                                                             \
  template XiValue<T> xi(const BlockParts<T>&);                                                 \
  template SidePair<T> schur_det_factorization(const QuadricSurface<T>&, const BlockParts<T>&); \
  template T discriminant_hessian_det(const BlockParts<T>&, const DiscriminantData<T>&);        \
  template T gradient_form(const BlockParts<T>&, const DiscriminantData<T>&,                    \
                           const ColVector<T>&);                                                \
  template T gradient_form_constant(const DiscriminantData<T>&);                                \
  template SidePair<T> determinant_bracket(const BlockParts<T>&, const DiscriminantData<T>&,    \
                                           const ColVector<T>&, const QuadricSurface<T>&);      \
  template SidePair<T> xi_bracket(const BlockParts<T>&, const DiscriminantData<T>&);            \
  template std::vector<Checkpoint<T>> proof_checkpoints(const QuadricSurface<T>&,               \
                                                        const ColVector<T>&, double);           \
  template VerificationReport<T> verify_identity(const QuadricSurface<T>&, const ColVector<T>&, \
                                                 BranchSign, double, bool);

QUADHESS_INSTANTIATE_IDENTITY(Rational)
QUADHESS_INSTANTIATE_IDENTITY(Real)
QUADHESS_INSTANTIATE_IDENTITY(Complex)

#undef QUADHESS_INSTANTIATE_IDENTITY

template Real discriminant_power(const Real&, std::size_t);
template Complex discriminant_power(const Complex&, std::size_t);
template Real lhs_float(const BlockParts<Real>&, const DiscriminantData<Real>&,
                        const ColVector<Real>&, BranchSign);
template Complex lhs_float(const BlockParts<Complex>&, const DiscriminantData<Complex>&,
                           const ColVector<Complex>&, BranchSign);

}  // namespace quadhess
