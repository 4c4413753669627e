#include <gtest/gtest.h>

#include <unorm/catalog.hpp>
#include <unorm/svd.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace unorm;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec r(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) r[i++] = x;
  return r;
}

void expect_near(const Vec& a, const Vec& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol) << "got " << a.transpose() << " want " << b.transpose();
}

}  // namespace

TEST(Multiply, ComplexUnitSquared) { expect_near(multiply(lookup("C"), v({0, 1}), v({0, 1})), v({-1, 0}), 1e-15); }

TEST(Multiply, ComponentWise) { expect_near(multiply(lookup("R+R"), v({2, 3}), v({4, 5})), v({8, 15}), 0); }

TEST(Multiply, DualNumbers) { expect_near(multiply(lookup("dual"), v({1, 2}), v({3, 4})), v({3, 10}), 1e-15); }

TEST(Multiply, RejectsWrongLength) {
  EXPECT_THROW(multiply(lookup("C"), v({1, 2, 3}), v({1, 0})), DimensionMismatch);
}

TEST(LeftMult, IdentityAtUnity) {
  for (const auto& A : catalog()) {
    SCOPED_TRACE(A.name);
    EXPECT_LT((left_mult_matrix(A, A.unity) - Mat::Identity(A.dim, A.dim)).norm(), 1e-15);
  }
}

TEST(LeftMult, ComplexPattern) {
  Mat want(2, 2);
  want << 0.7, -1.3, 1.3, 0.7;
  EXPECT_LT((left_mult_matrix(lookup("C"), v({0.7, 1.3})) - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LeftMult, DirectSumIsDiagonal) {
  EXPECT_EQ(left_mult_matrix(lookup("R+R"), v({2, 5})), Mat(v({2, 5}).asDiagonal()));
}

TEST(LeftMult, MatchesTensorOracle) {
  gen::for_all(1, 20, [](Rng& r, int k) {
    const AlgebraDef A = catalog()[static_cast<size_t>(k) % catalog().size()];
    const Vec s = gen::gaussian(r, A.dim);
    EXPECT_LT((left_mult_matrix(A, s) - oracle::left_mult(A, s)).norm(), 1e-14);
  });
}

TEST(LeftMult, LinearInS) {
  gen::for_all(2, 30, [](Rng& r, int k) {
    const AlgebraDef A = catalog()[static_cast<size_t>(k) % catalog().size()];
    const Vec s = gen::gaussian(r, A.dim), t = gen::gaussian(r, A.dim);
    const double a = r.normal(), b = r.normal();
    const Mat lhs = left_mult_matrix(A, a * s + b * t);
    const Mat rhs = a * left_mult_matrix(A, s) + b * left_mult_matrix(A, t);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14 * (1 + rhs.norm()));
  });
}

TEST(Inverse, KnownValues) {
  expect_near(inverse(lookup("C"), v({3, 4})), v({0.12, -0.16}), 1e-15);
  expect_near(inverse(lookup("dual"), v({2, 6})), v({0.5, -1.5}), 1e-15);
  expect_near(inverse(lookup("tri3"), v({2, 4, 1})), v({0.5, 0.25, -0.125}), 1e-15);
}

TEST(Inverse, NonUnitThrows) {
  EXPECT_THROW(inverse(lookup("R+R"), v({1, 0})), NotAUnit);
  EXPECT_THROW(inverse(lookup("dual"), v({0, 3})), NotAUnit);
  EXPECT_THROW(inverse(lookup("ipsg(1,0)"), v({1, 1})), NotAUnit);
}

TEST(Inverse, MatchesFullPivotOracle) {
  gen::for_all(3, 72, [](Rng& r, int k) {
    const AlgebraDef A = catalog()[static_cast<size_t>(k) % catalog().size()];
    if (A.rule.kind != RuleKind::associative_solve) return;
    const Vec s = gen::unit_near_one(A, r, 0.5);
    expect_near(inverse(A, s), oracle::inverse(A, s), 1e-12);
  });
}

TEST(Inverse, IsInvolutionOnUnits) {
  gen::for_all(4, 72, [](Rng& r, int k) {
    const AlgebraDef A = catalog()[static_cast<size_t>(k) % catalog().size()];
    const Vec s = gen::unit_near_one(A, r, 0.5);
    EXPECT_LT((inverse(A, inverse(A, s)) - s).norm(), 1e-8);
  });
}

TEST(Inverse, IpsgRightInverse) {
  gen::for_all(5, 56, [](Rng& r, int k) {
    const auto names = catalog_names();
    std::vector<std::string> ipsg;
    for (const auto& n : names)
      if (n.rfind("ipsg", 0) == 0) ipsg.push_back(n);
    const AlgebraDef A = lookup(ipsg[static_cast<size_t>(k) % ipsg.size()]);
    const Vec s = gen::unit_near_one(A, r, 0.6);
    EXPECT_LT((multiply(A, s, inverse(A, s)) - A.unity).norm(), 1e-12);
  });
}

TEST(Inverse, IpsgFormula) {
  // (sigma - s) / (sigma^2 - s'Qs) with Q = diag(1,1,1) for ipsg(3,0)
  const AlgebraDef A = lookup("ipsg(3,0)");
  const Vec s = v({2, 1, 0.5, -0.25});
  const double N = 4 - (1 + 0.25 + 0.0625);
  expect_near(inverse(A, s), v({2, -1, -0.5, 0.25}) / N, 1e-15);
}

TEST(Inverse, StarRuleOnQuaternions) {
  AlgebraDef H = lookup("H");
  H.rule.kind = RuleKind::star_algebra;
  gen::for_all(6, 20, [&](Rng& r, int) {
    const Vec s = gen::gaussian(r, 4);
    expect_near(inverse(H, s), oracle::inverse(H, s), 1e-12);
  });
}

TEST(Associativity, CatalogAssociativeRows) {
  for (const auto& A : catalog()) {
    if (A.rule.kind != RuleKind::associative_solve) continue;
    SCOPED_TRACE(A.name);
    gen::for_all(7, 100, [&](Rng& r, int) {
      const Vec a = gen::gaussian(r, A.dim), b = gen::gaussian(r, A.dim), c = gen::gaussian(r, A.dim);
      const Vec lhs = multiply(A, multiply(A, a, b), c), rhs = multiply(A, a, multiply(A, b, c));
      EXPECT_LT((lhs - rhs).norm(), 1e-12 * (1 + lhs.norm()));
    });
  }
}

TEST(Associativity, IpsgIsNotAssociativeBeyondTwoDims) {
  EXPECT_FALSE(is_associative(lookup("ipsg(2,0)")));
  EXPECT_TRUE(is_associative(lookup("ipsg(1,0)")));
}

TEST(OneNormSq, KnownValues) {
  EXPECT_EQ(one_norm_sq(lookup("R3x3")), 3);
  EXPECT_EQ(one_norm_sq(lookup("C")), 1);
  EXPECT_EQ(one_norm_sq(lookup("R+R")), 2);
  EXPECT_EQ(one_norm_sq(lookup("ipsg(2,1)")), 1);
}

TEST(OneNormSq, MissingRepresentation) {
  AlgebraDef A = lookup("C");
  A.matrix_rep.clear();
  EXPECT_THROW(one_norm_sq(A, false), MissingRepresentation);
  A.one_norm_sq_override = 1.0;
  EXPECT_EQ(one_norm_sq(A, false), 1.0);
}

TEST(Catalog, LookupExamples) {
  const AlgebraDef D = lookup("dual");
  EXPECT_EQ(D.dim, 2);
  EXPECT_EQ(multiply(D, v({0, 1}), v({0, 1})), v({0, 0}));
  EXPECT_EQ(lookup("uT3").dim, 3);
  const AlgebraDef I = lookup("ipsg(3,0)");
  EXPECT_EQ(I.dim, 4);
  EXPECT_EQ(I.rule.kind, RuleKind::ipsg);
  EXPECT_THROW(lookup("octonions"), UnknownAlgebra);
}

TEST(Catalog, EveryRowValidates) {
  for (const auto& A : catalog()) {
    SCOPED_TRACE(A.name);
    const ValidationReport r = validate(A);
    EXPECT_TRUE(r.ok()) << r.unity_residual << " " << r.rep_residual;
  }
}

TEST(Catalog, AliasesResolve) {
  EXPECT_EQ(lookup("A2").name, lookup("C").name);
  EXPECT_EQ(lookup("A13").dim, 5);
  EXPECT_EQ(lookup("A12").dim, 4);
}

TEST(Units, SamplingFailureOnNilpotentOnly) {
  // a zero-radius ball around a non-unit never yields a unit
  Rng r(0, 0);
  AlgebraDef A = lookup("dual");
  A.unity = v({0, 1});
  EXPECT_THROW(sample_unit_near_one(A, 0.0, r), SamplingFailure);
}

TEST(JacobiSvd, MatchesEigen) {
  gen::for_all(8, 30, [](Rng& r, int k) {
    const int rows = 1 + k % 7, cols = 1 + (k * 3) % 6;
    Mat A(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) A(i, j) = r.normal();
    const Svd s = jacobi_svd(A);
    const Vec ref = oracle::singular_values(A);
    ASSERT_EQ(s.s.size(), ref.size());
    EXPECT_LT((s.s - ref).cwiseAbs().maxCoeff(), 1e-12 * ref[0]);
    EXPECT_LT((s.U * s.s.asDiagonal() * s.V.transpose() - A).norm(), 1e-12 * A.norm());
    EXPECT_LT((s.U.transpose() * s.U - Mat::Identity(s.U.cols(), s.U.cols())).norm(), 1e-12);
    EXPECT_LT((s.V.transpose() * s.V - Mat::Identity(s.V.cols(), s.V.cols())).norm(), 1e-12);
    for (Eigen::Index i = 1; i < s.s.size(); ++i) EXPECT_LE(s.s[i], s.s[i - 1]);
  });
}

TEST(JacobiSvd, RankDeficient) {
  Mat A(4, 3);
  A << 1, 2, 3, 2, 4, 6, 1, 0, 1, 0, 2, 2;  // col3 = col1 + col2
  EXPECT_EQ(numeric_rank(A, 1e-10), oracle::rank(A, 1e-10));
  const Mat N = nullspace(A, 1e-10);
  ASSERT_EQ(N.cols(), 1);
  EXPECT_LT((A * N).norm(), 1e-13);
  EXPECT_LT((A * pinv(A, 1e-10) * A - A).norm(), 1e-12);
}
