#include <gtest/gtest.h>

#include <algorithm>

#include "cpn/rational.hpp"

using namespace cpn;

TEST(Poly, TrimsAndEvaluates) {
  const Poly p({1.0, 2.0, 0.0, 0.0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p(cplx{2.0, 1.0}), cplx(5.0, 2.0));
  EXPECT_TRUE(Poly(std::vector<cplx>{0.0}).is_zero());
}

TEST(Poly, Arithmetic) {
  const Poly a({1.0, 1.0});   // 1 + z
  const Poly b({-1.0, 1.0});  // z - 1
  const Poly p = a * b;       // z^2 - 1
  ASSERT_EQ(p.degree(), 2);
  EXPECT_EQ(p.coeffs()[0], cplx(-1.0));
  EXPECT_EQ(p.coeffs()[1], cplx(0.0));
  EXPECT_EQ(p.coeffs()[2], cplx(1.0));
  EXPECT_EQ((a - a).degree(), -1);
  const auto [q, r] = divmod(p, b, 1e-14);
  EXPECT_EQ(q.degree(), 1);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(p.derivative()(cplx(3.0)), cplx(6.0));
}

TEST(Poly, RootsOfKnownCubic) {
  // (z - 1)(z + 2)(z - i)
  const Poly p = Poly({-1.0, 1.0}) * Poly({2.0, 1.0}) * Poly({-kI, 1.0});
  auto roots = p.roots();
  ASSERT_EQ(roots.size(), 3u);
  const cplx expect[] = {1.0, -2.0, kI};
  for (cplx e : expect) {
    const double best = std::abs(*std::min_element(roots.begin(), roots.end(), [&](cplx a, cplx b) {
      return std::abs(a - e) < std::abs(b - e);
    }) - e);
    EXPECT_LT(best, 1e-10);
  }
}

TEST(Poly, ReversedAndScaled) {
  const Poly p({1.0, 2.0, 3.0});
  const cplx w{0.7, -0.2};
  EXPECT_LT(std::abs(p.reversed(2)(w) - p(1.0 / w) * w * w), 1e-13);
  EXPECT_LT(std::abs(p.scaled_argument(2.0)(w) - p(2.0 * w)), 1e-13);
}

TEST(Poly, Gcd) {
  const Poly common({-0.5, 1.0});
  const Poly a = common * Poly({3.0, 1.0});
  const Poly b = common * Poly({kI, 1.0, 1.0});
  const Poly g = gcd(a, b);
  ASSERT_EQ(g.degree(), 1);
  EXPECT_LT(std::abs(g(cplx(0.5))), 1e-10);
}

TEST(RationalFn, ReducesCommonFactor) {
  // (z^2 - 1)/(z - 1) = z + 1
  const RationalFn r(Poly({-1.0, 0.0, 1.0}), Poly({-1.0, 1.0}));
  EXPECT_TRUE(r.is_polynomial());
  EXPECT_LT(std::abs(r(cplx{2.0, 3.0}) - cplx{3.0, 3.0}), 1e-12);
  EXPECT_TRUE(r.poles().empty());
}

TEST(RationalFn, DenominatorIsMonic) {
  const RationalFn r(Poly({1.0}), Poly({0.0, 2.0}));  // 1/(2z)
  EXPECT_EQ(r.den().leading(), cplx(1.0));
  EXPECT_LT(std::abs(r(cplx(4.0)) - 0.125), 1e-15);
}

TEST(RationalFn, DerivativeAgainstQuotientRule) {
  const RationalFn r(Poly({1.0, 0.0, 1.0}), Poly({2.0, 1.0}));  // (1 + z^2)/(2 + z)
  const cplx z{0.3, 0.8};
  const cplx expect = (2.0 * z * (2.0 + z) - (1.0 + z * z)) / ((2.0 + z) * (2.0 + z));
  EXPECT_LT(std::abs(r.derivative()(z) - expect), 1e-13);
}

TEST(RationalFn, InvertedArgumentAndArithmetic) {
  const RationalFn r(Poly({1.0, 0.0, 1.0}), Poly({2.0, 1.0}));
  const cplx w{0.4, -0.9};
  EXPECT_LT(std::abs(r.inverted_argument()(w) - r(1.0 / w)), 1e-12);
  const RationalFn s = RationalFn::identity();
  EXPECT_LT(std::abs((r * s - r)(w) - (r(w) * w - r(w))), 1e-12);
  EXPECT_LT(std::abs((r + s)(w) - (r(w) + w)), 1e-12);
  const Jet x = Jet::variable(w, 2);
  EXPECT_LT(std::abs(r(x).derivative(1, 0) - r.derivative()(w)), 1e-12);
  EXPECT_LT(std::abs(r(x).derivative(0, 1)), 1e-15);
}
