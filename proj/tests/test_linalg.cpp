#include <gtest/gtest.h>

#include "support.hpp"

namespace quadhess {
namespace {

using testing::q;
using testing::random_rational_matrix;
using testing::random_rational_vector;
using M = Matrix<Rational>;

TEST(Determinant, DiagonalProduct) {
  EXPECT_EQ(determinant(M::diagonal({1, 1, -1})), Rational(-1));
}

TEST(Determinant, TwoByTwo) {
  const Rational h = q("1/2");
  EXPECT_EQ(determinant(M::from_rows({{0, h}, {h, 0}})), q("-1/4"));
}

TEST(Determinant, FourByFourBlockMatchesCofactor) {
  const Rational h = q("1/2");
  const M m = Rational(2) * M::from_rows({{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 0, h}, {0, 0, h, 0}});
  EXPECT_EQ(cofactor_det(m), Rational(-4));
  EXPECT_EQ(determinant(m), Rational(-4));
}

TEST(Determinant, RandomAgreesWithCofactor) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const M m = random_rational_matrix(rng, n, n);
    ASSERT_EQ(determinant(m), cofactor_det(m)) << "n = " << n;
  }
}

TEST(Determinant, Multiplicative) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const M a = random_rational_matrix(rng, n, n);
    const M b = random_rational_matrix(rng, n, n);
    ASSERT_EQ(determinant(a * b), determinant(a) * determinant(b));
  }
}

TEST(Determinant, FloatTracksExact) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const M m = random_rational_matrix(rng, n, n, 3);
    const double exact = determinant(m).get_d();
    const double approx = determinant(convert<Real>(m));
    ASSERT_LE(testing::rel_err(approx, exact), 1e-10) << "n = " << n;
  }
}

TEST(Determinant, SingularFloatIsZero) {
  const Matrix<Real> m = Matrix<Real>::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(determinant(m), 0.0);
}

TEST(Determinant, ComplexNoConjugation) {
  using C = Complex;
  const Matrix<C> m = Matrix<C>::from_rows({{C(0, 1), C(1, 0)}, {C(1, 0), C(0, 1)}});
  const C det = determinant(m);
  EXPECT_NEAR(det.real(), -2.0, 1e-15);
  EXPECT_NEAR(det.imag(), 0.0, 1e-15);
}

TEST(Determinant, NonSquareThrows) {
  try {
    determinant(M::zeros(2, 3));
    FAIL() << "expected a dimension error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension);
  }
}

TEST(SymmetricPart, SymmetricInputUnchanged) {
  const M m = M::from_rows({{1, 2}, {2, 5}});
  EXPECT_EQ(symmetric_part(m), m);
}

TEST(SymmetricPart, Averages) {
  EXPECT_EQ(symmetric_part(M::from_rows({{0, 2}, {0, 0}})), M::from_rows({{0, 1}, {1, 0}}));
}

TEST(SymmetricPart, Idempotent) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const M m = random_rational_matrix(rng, 4, 4);
    const M s = symmetric_part(m);
    ASSERT_TRUE(s.is_symmetric());
    ASSERT_EQ(symmetric_part(s), s);
    ASSERT_EQ(s, q("1/2") * (m + m.transpose()));
  }
}

TEST(SymmetricPart, FloatResultExactlySymmetric) {
  const Matrix<Real> m = Matrix<Real>::from_rows({{0.1, 0.7}, {0.3, 0.2}});
  EXPECT_TRUE(symmetric_part(m).is_symmetric());
}

TEST(DeterminantLemma, SmallExample) {
  const M r = M::diagonal({2, 3});
  const M s = M::column(ColVector<Rational>{1, 1});
  const M t = M::from_rows({{1}});
  const M u = M::row(ColVector<Rational>{1, 1});
  EXPECT_EQ(det_rank_one_like_update(r, s, t, u), Rational(11));
}

TEST(DeterminantLemma, IdentityRankOne) {
  const ColVector<Rational> s{1, q("2/3"), -2};
  const ColVector<Rational> u{q("1/2"), 5, 1};
  const Rational got = det_rank_one_like_update(M::identity(3), M::column(s),
                                                M::from_rows({{1}}), M::row(u));
  EXPECT_EQ(got, Rational(1) + dot(u, s));
}

TEST(DeterminantLemma, AgreesWithDirect) {
  std::mt19937_64 rng(15);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const std::size_t m = 1 + trial % 3;
    const M r = random_rational_matrix(rng, n, n);
    const M s = random_rational_matrix(rng, n, m);
    const M t = random_rational_matrix(rng, m, m);
    const M u = random_rational_matrix(rng, m, n);
    if (determinant(r) == 0 || determinant(t) == 0) continue;
    ASSERT_EQ(det_rank_one_like_update(r, s, t, u), determinant(r + s * t * u));
    ++checked;
  }
  EXPECT_GT(checked, 250);
}

TEST(DeterminantLemma, SingularRThrows) {
  try {
    det_rank_one_like_update(M::diagonal({1, 0}), M::column(ColVector<Rational>{1, 1}),
                             M::from_rows({{1}}), M::row(ColVector<Rational>{1, 1}));
    FAIL() << "expected a singular error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular);
  }
}

TEST(DeterminantLemma, ShapeMismatchThrows) {
  try {
    det_rank_one_like_update(M::identity(2), M::zeros(3, 1), M::identity(1), M::zeros(1, 2));
    FAIL() << "expected a dimension error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension);
  }
}

TEST(RankOneInverse, Example) {
  const ColVector<Rational> e1{1, 0};
  EXPECT_EQ(inv_rank_one_update(M::identity(2), e1, e1), M::diagonal({q("1/2"), 1}));
}

TEST(RankOneInverse, UpdateSingular) {
  try {
    inv_rank_one_update(M::identity(2), ColVector<Rational>{1, 0}, ColVector<Rational>{-1, 0});
    FAIL() << "expected an update-singular error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::update_singular);
  }
}

TEST(RankOneInverse, UpdateSingularFloat) {
  try {
    inv_rank_one_update(Matrix<Real>::identity(2), ColVector<Real>{1, 0}, ColVector<Real>{-1, 0});
    FAIL() << "expected an update-singular error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::update_singular);
  }
}

TEST(RankOneInverse, RandomFiveByFiveTimesUpdateIsIdentity) {
  std::mt19937_64 rng(16);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const M r = random_rational_matrix(rng, 5, 5);
    const ColVector<Rational> s = random_rational_vector(rng, 5);
    const ColVector<Rational> u = random_rational_vector(rng, 5);
    const M updated = r + outer(s, u);
    if (determinant(r) == 0 || determinant(updated) == 0) continue;
    ASSERT_EQ(inv_rank_one_update(r, s, u) * updated, M::identity(5));
    ASSERT_EQ(inv_rank_one_update(r, s, u), inverse(updated));
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(Inverse, Identity) {
  EXPECT_EQ(inverse(M::identity(4)), M::identity(4));
}

TEST(Inverse, Diagonal) {
  EXPECT_EQ(inverse(M::diagonal({2, 4})), M::diagonal({q("1/2"), q("1/4")}));
}

TEST(Inverse, SingularThrows) {
  for (const auto& m : {M::from_rows({{1, 2}, {2, 4}}), M::zeros(3, 3)}) {
    try {
      inverse(m);
      FAIL() << "expected a singular error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::singular);
    }
  }
}

TEST(Inverse, FloatRoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const M m = random_rational_matrix(rng, 4, 4, 3);
    if (determinant(m) == 0) continue;
    const Matrix<Real> mf = convert<Real>(m);
    ASSERT_LE(max_abs(inverse(mf) * mf - Matrix<Real>::identity(4)), 1e-9);
  }
}

TEST(Solve, MatchesInverse) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    const M m = random_rational_matrix(rng, 3, 3);
    if (determinant(m) == 0) continue;
    const ColVector<Rational> v = random_rational_vector(rng, 3);
    ASSERT_EQ(solve(m, v), inverse(m) * v);
  }
}

TEST(SchurComplement, DeterminantFactorizes) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const M m = random_rational_matrix(rng, 5, 5);
    const M lead = m.block(0, 0, 3, 3);
    if (determinant(lead) == 0) continue;
    ASSERT_EQ(determinant(m), determinant(lead) * determinant(schur_complement(m, 3)));
  }
}

}  // namespace
}  // namespace quadhess
