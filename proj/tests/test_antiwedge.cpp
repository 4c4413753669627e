#include <gtest/gtest.h>

#include <unorm/antiwedge.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace unorm;
using namespace unorm::sta;

namespace {

void expect_array_near(const Spatial& a, const Spatial& b, double tol) {
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], tol) << "component " << i;
}

}  // namespace

TEST(Minkowski, Example) { EXPECT_EQ(minkowski_inner({2, 1, 1, 0}, {1, 2, 0, 3}), 0.0); }

TEST(Boost, Example) {
  const FourVector b = boost({1, 0, 0, 0}, 0.6);
  EXPECT_NEAR(b[0], 1.25, 1e-15);
  EXPECT_NEAR(b[1], -0.75, 1e-15);
  EXPECT_EQ(b[2], 0.0);
  EXPECT_EQ(b[3], 0.0);
}

TEST(Boost, PreservesInterval) {
  gen::for_all(60, 100, [](Rng& r, int) {
    const FourVector a = gen::four_vector(r), b = gen::four_vector(r);
    const double v = r.uniform(-0.99, 0.99);
    EXPECT_NEAR(minkowski_inner(boost(a, v), boost(b, v)), minkowski_inner(a, b), 1e-12);
  });
}

TEST(Boost, SpeedOutOfRange) {
  EXPECT_THROW(boost({1, 0, 0, 0}, 1.0), SpeedOutOfRange);
  EXPECT_THROW(boost({1, 0, 0, 0}, -1.5), SpeedOutOfRange);
  EXPECT_THROW(boost({1, 0, 0, 0}, std::nan("")), SpeedOutOfRange);
}

TEST(AntiWedge, Examples) {
  expect_array_near(anti_wedge({1, 0, 0, 0}, {0, 1, 0, 0}), {-1, 0, 0}, 0);
  expect_array_near(anti_wedge({1, 1, 1, 1}, {2, 0, 0, 0}), {2, 2, 2}, 0);
}

TEST(Wedge, MatchesOuterProduct) {
  static constexpr int P[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  gen::for_all(61, 100, [](Rng& r, int) {
    const FourVector a = gen::four_vector(r), b = gen::four_vector(r);
    const Bivector w = wedge(a, b);
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(w[k], oracle::outer(a, b, P[k][0], P[k][1]), 1e-15);
  });
}

TEST(Wedge, BilinearAntisymmetric) {
  gen::for_all(62, 100, [](Rng& r, int) {
    const FourVector a = gen::four_vector(r), b = gen::four_vector(r), c = gen::four_vector(r);
    const double s = r.normal();
    FourVector as{};
    for (int i = 0; i < 4; ++i) as[i] = s * a[i] + c[i];
    const Bivector ab = wedge(a, b), ba = wedge(b, a), cb = wedge(c, b), lin = wedge(as, b);
    for (int k = 0; k < 6; ++k) {
      EXPECT_NEAR(ab[k], -ba[k], 1e-15);
      EXPECT_NEAR(lin[k], s * ab[k] + cb[k], 1e-13);
    }
    EXPECT_EQ(wedge(a, a).c, (std::array<double, 6>{}));
  });
}

TEST(Wedge, SimpleBivectorSquaresToZero) {
  gen::for_all(63, 200, [](Rng& r, int) {
    EXPECT_NEAR(self_wedge(wedge(gen::four_vector(r), gen::four_vector(r))), 0.0, 1e-15);
  });
  Bivector w;
  w.c = {1, 0, 0, 0, 0, 1};  // g01 + g23 is not simple
  EXPECT_EQ(self_wedge(w), 1.0);
}

TEST(AntiWedge, TimeComponentIsA01) {
  gen::for_all(64, 100, [](Rng& r, int) {
    const FourVector a = gen::four_vector(r), b = gen::four_vector(r);
    EXPECT_EQ(anti_wedge(a, b)[0], A01(a, b));
    EXPECT_NEAR(anti_wedge(time_boost_reflection(a), time_boost_reflection(b))[0], -A01(a, b), 1e-15);
  });
}

TEST(Theorem, AllResidualsVanish) {
  gen::for_all(65, 1000, [](Rng& r, int) {
    const FourVector a = gen::four_vector(r), b = gen::four_vector(r);
    const TheoremReport t = verify_theorem(a, b, r.uniform(-0.95, 0.95));
    EXPECT_LT(t.max_residual(), 1e-12);
  });
}

TEST(Theorem, IdentityProductIndependentOfPerpendicular) {
  // p^q in the 2-3 plane equals A01 * A23
  const FourVector a{1, 2, 0.5, -1}, b{0.3, -1, 2, 0.25};
  const Spatial w = anti_wedge(a, b), wh = anti_wedge(time_boost_reflection(a), time_boost_reflection(b));
  EXPECT_NEAR(perp_wedge(w, wh), A01(a, b) * A23(a, b), 1e-14);
}
