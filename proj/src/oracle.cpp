#include "quadhess/oracle.hpp"

#include <random>
#include <vector>

namespace quadhess {

FdConfig::FdConfig(double step) : step_(step) {
  if (!(step > 0.0)) throw Error(ErrorKind::stencil, "finite-difference step must be positive");
}

template <FloatingScalar T>
T graph_value(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch) {
  if (!is_zero(parts.d)) return solve_y(parts, x, branch);
  const QuadraticInY<T> quad = quadratic_in_y(parts, x);
  if (is_zero(quad.b2)) {
    throw Error(ErrorKind::degenerate_leading_coefficient, "d = 0 and b2 = 0: no graph root");
  }
  return -quad.c0 / quad.b2;
}

namespace {

template <FloatingScalar T>
T stencil_value(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch) {
  try {
    return graph_value(parts, x, branch);
  } catch (const Error& err) {
    throw Error(ErrorKind::stencil, std::string("stencil point left the graph domain: ") + err.what());
  }
}

template <FloatingScalar T>
ColVector<T> shifted(const ColVector<T>& x, std::size_t i, double hi, std::size_t j, double hj) {
  std::vector<T> v(x.entries().begin(), x.entries().end());
  v[i] += T(hi);
  v[j] += T(hj);
  return ColVector<T>(std::move(v));
}

}  // namespace

template <FloatingScalar T>
ColVector<T> fd_gradient(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch,
                         const FdConfig& cfg) {
  if (x.dim() != parts.n()) throw Error(ErrorKind::dimension, "fd_gradient: point dimension");
  const double h = cfg.step();
  return ColVector<T>::generate(x.dim(), [&](std::size_t i) -> T {
    const T up = stencil_value(parts, shifted(x, i, h, i, 0.0), branch);
    const T down = stencil_value(parts, shifted(x, i, -h, i, 0.0), branch);
    return (up - down) / T(2.0 * h);
  });
}

template <FloatingScalar T>
Matrix<T> fd_hessian(const BlockParts<T>& parts, const ColVector<T>& x, BranchSign branch,
                     const FdConfig& cfg) {
  const std::size_t n = parts.n();
  if (x.dim() != n) throw Error(ErrorKind::dimension, "fd_hessian: point dimension");
  const double h = cfg.step();
  const T center = stencil_value(parts, x, branch);

  std::vector<T> raw(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const T up = stencil_value(parts, shifted(x, i, h, i, 0.0), branch);
    const T down = stencil_value(parts, shifted(x, i, -h, i, 0.0), branch);
    raw[i * n + i] = (up - T(2.0) * center + down) / T(h * h);
    for (std::size_t j = i + 1; j < n; ++j) {
      const T pp = stencil_value(parts, shifted(x, i, h, j, h), branch);
      const T pm = stencil_value(parts, shifted(x, i, h, j, -h), branch);
      const T mp = stencil_value(parts, shifted(x, i, -h, j, h), branch);
      const T mm = stencil_value(parts, shifted(x, i, -h, j, -h), branch);
      raw[i * n + j] = (pp - pm - mp + mm) / T(4.0 * h * h);
      raw[j * n + i] = raw[i * n + j];
    }
  }
  return symmetric_part(Matrix<T>(n, n, std::move(raw)));
}

template <Scalar T>
ImplicitDerivatives<T> implicit_derivatives(const QuadricSurface<T>& q, const ColVector<T>& x,
                                            const T& y0) {
  const std::size_t n = q.n();
  if (x.dim() != n) throw Error(ErrorKind::dimension, "implicit_derivatives: point dimension");
  const Matrix<T>& s = q.sym_q();

  std::vector<T> vv(x.entries().begin(), x.entries().end());
  vv.push_back(y0);
  vv.push_back(T(1));
  const ColVector<T> v(std::move(vv));
  const ColVector<T> sv = s * v;
  const T residual = dot(v, sv);

  // ∂F/∂v = 2·S·v; the x-block and y-entry give F_x and F_y.
  const T f_y = T(2) * sv[n];
  if constexpr (is_exact_v<T>) {
    if (!is_zero(residual)) throw Error(ErrorKind::residual, "point is not on the quadric");
    if (is_zero(f_y)) throw Error(ErrorKind::vertical_tangent, "dF/dy = 0 at this point");
  } else {
    const double v_scale = std::max(1.0, max_abs(v));
    const double scale = std::max(1.0, max_abs(s) * v_scale * v_scale);
    if (magnitude(residual) > 1e-9 * scale) {
      throw Error(ErrorKind::residual, "point is off the quadric (residual " +
                                           format_scalar(residual) + ")");
    }
    if (magnitude(f_y) <= 1e-12 * scale) {
      throw Error(ErrorKind::vertical_tangent, "dF/dy vanishes at this point");
    }
  }

  const ColVector<T> grad =
      ColVector<T>::generate(n, [&](std::size_t i) -> T { return -(T(2) * sv[i]) / f_y; });

  // F_xixj = 2A_ij, F_xiy = 2b_i, F_yy = 2d.
  std::vector<T> h(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const T num = T(2) * s(i, j) + T(2) * s(i, n) * grad[j] + T(2) * s(j, n) * grad[i] +
                    T(2) * s(n, n) * grad[i] * grad[j];
      const T val = -num / f_y;
      h[i * n + j] = val;
      h[j * n + i] = val;
    }
  return ImplicitDerivatives<T>{grad, Matrix<T>(n, n, std::move(h))};
}

namespace {

template <Scalar T>
T laplace(const Matrix<T>& m, std::size_t row, std::vector<bool>& used) {
  const std::size_t n = m.rows();
  if (row == n) return T(1);
  T sum(0);
  int sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j]) continue;
    if (!is_zero(m(row, j))) {
      used[j] = true;
      const T minor = laplace(m, row + 1, used);
      used[j] = false;
      if (sign > 0) {
        sum += m(row, j) * minor;
      } else {
        sum -= m(row, j) * minor;
      }
    }
    sign = -sign;
  }
  return sum;
}

}  // namespace

template <Scalar T>
T cofactor_det(const Matrix<T>& m) {
  if (!m.is_square()) throw Error(ErrorKind::dimension, "cofactor_det: matrix is not square");
  if (m.rows() > kCofactorMaxSize) {
    throw Error(ErrorKind::size, "cofactor_det supports at most 7x7 matrices");
  }
  std::vector<bool> used(m.rows(), false);
  return laplace(m, 0, used);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // SplitMix64 finalizer applied to base + (index + 1)·golden gamma.
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// MT19937-64 with an explicit modulo mapping; std distributions are not
// specified bit-for-bit across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::int64_t integer(std::int64_t bound) {
    if (bound <= 0) return 0;
    const auto span = static_cast<std::uint64_t>(2 * bound + 1);
    return static_cast<std::int64_t>(engine_() % span) - bound;
  }

  std::int64_t positive(std::int64_t bound) {
    if (bound <= 1) return 1;
    return 1 + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(bound));
  }

  Rational entry(std::int64_t bound, bool with_denominator) {
    const std::int64_t num = integer(bound);
    const std::int64_t den = with_denominator ? positive(bound) : 1;
    Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 engine_;
};

Matrix<Rational> draw_matrix(Sampler& rng, const GenConfig& cfg) {
  const std::size_t m = cfg.n + 2;
  std::vector<Rational> e(m * m);
  if (cfg.force_singular) {
    // Sum of n+1 signed rank-one terms, so rank(sym_q) <= n+1 < n+2.
    for (std::size_t k = 0; k + 1 < m; ++k) {
      std::vector<Rational> w(m);
      for (auto& wi : w) wi = Rational(static_cast<long>(rng.integer(cfg.entry_range)));
      const long sigma = rng.integer(1) < 0 ? -1 : 1;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) e[i * m + j] += sigma * w[i] * w[j];
    }
  } else if (cfg.asymmetric_raw) {
    for (auto& x : e) x = rng.entry(cfg.entry_range, cfg.use_denominators);
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        e[i * m + j] = rng.entry(cfg.entry_range, cfg.use_denominators);
        e[j * m + i] = e[i * m + j];
      }
  }
  if (cfg.force_d_zero) e[cfg.n * m + cfg.n] = 0;
  return Matrix<Rational>(m, m, std::move(e));
}

ColVector<Rational> draw_point(Sampler& rng, const GenConfig& cfg) {
  return ColVector<Rational>::generate(
      cfg.n, [&](std::size_t) { return rng.entry(cfg.point_range, cfg.point_denominators); });
}

template <Scalar T>
bool point_within(const ColVector<T>& x, double limit) {
  if (limit <= 0.0) return true;
  double sq = 0.0;
  for (const T& v : x.entries()) sq += magnitude(v) * magnitude(v);
  return sq <= limit * limit;
}

void validate(const GenConfig& cfg) {
  if (cfg.n < 1) throw Error(ErrorKind::dimension, "generator needs n >= 1");
  if (cfg.force_d_zero && cfg.require_d_nonzero) {
    throw Error(ErrorKind::generation_exhausted, "force_d_zero contradicts require_d_nonzero");
  }
}

}  // namespace

GenConfig well_conditioned_config(std::size_t n, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.entry_range = 2;
  cfg.point_range = 2;
  cfg.min_discriminant = 4.0;
  cfg.max_point_norm = 2.0;
  return cfg;
}

Instance<Rational> random_quadric(const GenConfig& cfg) {
  validate(cfg);
  Sampler rng(cfg.seed);
  const Rational min_disc(cfg.min_discriminant);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    QuadricSurface<Rational> q(draw_matrix(rng, cfg));
    ColVector<Rational> x = draw_point(rng, cfg);
    if (!point_within(x, cfg.max_point_norm)) continue;
    const BlockParts<Rational> parts = decompose(q);
    if (cfg.require_d_nonzero && is_zero(parts.d)) continue;
    if (cfg.require_positive_discriminant) {
      const Rational delta = discriminant_value(discriminant_data(parts), x);
      if (!(delta > 0 && delta > min_disc)) continue;
    }
    return Instance<Rational>{std::move(q), std::move(x)};
  }
  throw Error(ErrorKind::generation_exhausted,
              "no instance met the constraints within " +
                  std::to_string(kMaxGenerationAttempts) + " attempts");
}

Instance<Complex> random_complex_quadric(const GenConfig& cfg) {
  validate(cfg);
  Sampler rng(cfg.seed);
  const std::size_t m = cfg.n + 2;
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    const Matrix<Rational> re = draw_matrix(rng, cfg);
    const Matrix<Rational> im = draw_matrix(rng, cfg);
    const ColVector<Rational> xr = draw_point(rng, cfg);
    const ColVector<Rational> xi = draw_point(rng, cfg);
    QuadricSurface<Complex> q(Matrix<Complex>::generate(m, m, [&](std::size_t i, std::size_t j) {
      return Complex(re(i, j).get_d(), im(i, j).get_d());
    }));
    ColVector<Complex> x = ColVector<Complex>::generate(
        cfg.n, [&](std::size_t i) { return Complex(xr[i].get_d(), xi[i].get_d()); });
    if (!point_within(x, cfg.max_point_norm)) continue;
    const BlockParts<Complex> parts = decompose(q);
    if (cfg.require_d_nonzero && magnitude(parts.d) == 0.0) continue;
    if (cfg.require_positive_discriminant) {
      const double delta = magnitude(discriminant_value(discriminant_data(parts), x));
      if (!(delta > 0.0 && delta > cfg.min_discriminant)) continue;
    }
    return Instance<Complex>{std::move(q), std::move(x)};
  }
  throw Error(ErrorKind::generation_exhausted,
              "no complex instance met the constraints within " +
                  std::to_string(kMaxGenerationAttempts) + " attempts");
}

template Real graph_value(const BlockParts<Real>&, const ColVector<Real>&, BranchSign);
template Complex graph_value(const BlockParts<Complex>&, const ColVector<Complex>&, BranchSign);
template ColVector<Real> fd_gradient(const BlockParts<Real>&, const ColVector<Real>&, BranchSign,
                                     const FdConfig&);
template ColVector<Complex> fd_gradient(const BlockParts<Complex>&, const ColVector<Complex>&,
                                        BranchSign, const FdConfig&);
template Matrix<Real> fd_hessian(const BlockParts<Real>&, const ColVector<Real>&, BranchSign,
                                 const FdConfig&);
template Matrix<Complex> fd_hessian(const BlockParts<Complex>&, const ColVector<Complex>&,
                                    BranchSign, const FdConfig&);

#define QUADHESS_INSTANTIATE_ORACLE(T)                                                          \
  template ImplicitDerivatives<T> implicit_derivatives(const QuadricSurface<T>&,                \
                                                       const ColVector<T>&, const T&);          \
  template T cofactor_det(const Matrix<T>&);

QUADHESS_INSTANTIATE_ORACLE(Rational)
QUADHESS_INSTANTIATE_ORACLE(Real)
QUADHESS_INSTANTIATE_ORACLE(Complex)

#undef QUADHESS_INSTANTIATE_ORACLE

}  // namespace quadhess
