#include <gtest/gtest.h>

#include "cpn/numerics.hpp"

using namespace cpn;

namespace {

FieldExpr sample_expr() {
  const FieldExpr x = FieldExpr::xi(), xb = FieldExpr::xibar();
  const RationalFn r(Poly({1.0, 0.0, 1.0}), Poly({-2.0, 1.0}));
  return (FieldExpr::holo(r) * xb + cplx{0.5, 1.0}) / (1.0 + x * xb) - conj(x * x);
}

}  // namespace

TEST(FieldExpr, EvaluatesByHand) {
  const cplx z{0.4, 0.3}, zb = std::conj(z);
  const cplx r = (1.0 + z * z) / (z - 2.0);
  const cplx expect = (r * zb + cplx{0.5, 1.0}) / (1.0 + z * zb) - std::conj(z * z);
  EXPECT_LT(std::abs(sample_expr()(z) - expect), 1e-14);
}

TEST(FieldExpr, DerivativesMatchFiniteDifferences) {
  const FieldExpr e = sample_expr();
  for (cplx z : {cplx{0.4, 0.3}, cplx{-1.0, 0.5}, cplx{0.1, -2.0}}) {
    EXPECT_LT(fd_check(e, z), 1e-7);
    EXPECT_LT(fd_check(e.d(), z), 1e-6);
    EXPECT_LT(fd_check(e.dbar(), z), 1e-6);
  }
}

TEST(FieldExpr, HolomorphicHasNoDbar) {
  const FieldExpr h = FieldExpr::holo(RationalFn(Poly({1.0, 2.0, 3.0})));
  EXPECT_TRUE(h.dbar().is_zero());
  EXPECT_TRUE(FieldExpr::xibar().d().is_zero());
  EXPECT_TRUE(FieldExpr(3.0).is_constant());
}

TEST(FieldExpr, JetAgreesWithExactDerivatives) {
  const FieldExpr e = sample_expr();
  const cplx z{0.7, -0.4};
  const Jet j = e.jet(z, 3);
  EXPECT_LT(std::abs(j.value() - e(z)), 1e-14);
  EXPECT_LT(std::abs(j.derivative(1, 0) - e.d()(z)), 1e-12);
  EXPECT_LT(std::abs(j.derivative(0, 1) - e.dbar()(z)), 1e-12);
  EXPECT_LT(std::abs(j.derivative(1, 1) - e.d().dbar()(z)), 1e-11);
  EXPECT_LT(std::abs(j.derivative(2, 1) - e.d().d().dbar()(z)), 1e-10);
}

TEST(FieldExpr, ReparametrizedJet) {
  // xi = 1/w: the jet in w of f(xi) = xi^2 is w^-2
  const FieldExpr e = FieldExpr::xi() * FieldExpr::xi();
  const cplx w{0.5, 0.5};
  const Jet wj = Jet::variable(w, 3);
  const Jet j = e.jet_at(reciprocal(wj));
  EXPECT_LT(std::abs(j.value() - 1.0 / (w * w)), 1e-13);
  EXPECT_LT(std::abs(j.derivative(1, 0) + 2.0 / (w * w * w)), 1e-12);
}

TEST(FieldExpr, CollectsPolesAndDenominators) {
  std::vector<cplx> poles;
  sample_expr().collect_poles(poles);
  ASSERT_EQ(poles.size(), 1u);
  EXPECT_LT(std::abs(poles[0] - 2.0), 1e-12);
  std::vector<FieldExpr> dens;
  sample_expr().collect_denominators(dens);
  ASSERT_EQ(dens.size(), 1u);
  EXPECT_LT(std::abs(dens[0](kI) - 2.0), 1e-14);
}

TEST(FieldExpr, MapLeaves) {
  // substitute xi -> 2 xi in every leaf
  const FieldExpr e = FieldExpr::xi() * FieldExpr::xibar();
  const FieldExpr m = e.map_leaves([](const RationalFn& r) { return r.scaled_argument(2.0); });
  const cplx z{0.3, 0.1};
  EXPECT_LT(std::abs(m(z) - 4.0 * std::norm(z)), 1e-14);
}
